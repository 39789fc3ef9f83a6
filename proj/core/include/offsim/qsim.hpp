#pragma once

// Exact state-vector simulation over named registers.

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "offsim/gf2.hpp"
#include "offsim/rng.hpp"

namespace offsim::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultQubitCap = 26;

// kDefaultQubitCap unless OFFLINE_SIMON_QUBIT_CAP is set.
int default_qubit_cap();

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RegisterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Register {
  std::string name;
  int offset = 0;
  int width = 0;

  Word extract(std::size_t index) const { return static_cast<Word>(index >> offset) & width_mask(width); }
  std::size_t mask() const { return std::size_t{width_mask(width)} << offset; }
};

// Registers are packed from bit 0 upward in insertion order.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout& add(std::string name, int width);

  const Register& operator[](std::string_view name) const;
  const std::vector<Register>& registers() const { return registers_; }
  int qubits() const { return qubits_; }

 private:
  std::vector<Register> registers_;
  int qubits_ = 0;
};

class QState {
 public:
  QState(RegisterLayout layout, std::vector<Amplitude> amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  const Register& reg(std::string_view name) const { return layout_[name]; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }

  double norm() const;

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

using Matrix2 = std::array<Amplitude, 4>;  // row-major {a, b, c, d}

QState init_zero(const RegisterLayout& layout, int cap = default_qubit_cap());

void apply_h(QState& state, std::string_view reg);
// |y> -> |y ^ constant>; prepares basis values from |0>.
void apply_xor_constant(QState& state, std::string_view reg, Word constant);
void apply_x(QState& state, std::string_view reg);
void apply_single_qubit(QState& state, std::string_view reg, int bit, const Matrix2& u);
void apply_controlled_single_qubit(QState& state, std::string_view control,
                                   const std::function<bool(Word)>& predicate,
                                   std::string_view target, int bit, const Matrix2& u);

// |x>|y> -> |x>|y ^ f(x)>
void apply_oracle_xor(QState& state, const TruthTable& f, std::string_view in, std::string_view out);
// |i>|x>|y> -> |i>|x>|y ^ F(i, x)>
void apply_indexed_oracle(QState& state, const IndexedFamily& family, std::string_view index,
                          std::string_view in, std::string_view out);
// |x>|y> -> |x>|y ^ constant> when x == match.
void apply_controlled_xor_constant(QState& state, std::string_view control, Word match,
                                   std::string_view target, Word constant);

void apply_phase_if(QState& state, std::string_view reg, const std::function<bool(Word)>& predicate);
// Sign flip of the register's all-zero value.
void apply_reflection_about_zero(QState& state, std::string_view reg);

// Flips bit 0 of `target` on basis states whose values in `registers` satisfy
// `predicate`. This is the fused compute / xor / uncompute of a classical
// reversible predicate.
void apply_predicate_flip(QState& state, std::span<const std::string> registers,
                          const std::function<bool(std::span<const Word>)>& predicate,
                          std::string_view target);

void apply_global_phase(QState& state, Amplitude phase);

std::vector<double> marginal(const QState& state, std::string_view reg);
double prob_of(const QState& state, std::string_view reg, Word value);
// Born-rule sample; collapses `state` onto the outcome and renormalizes.
Word measure(QState& state, std::string_view reg, Rng& rng);
// Projects onto reg == value and renormalizes. Throws on a zero-norm branch.
void collapse(QState& state, std::string_view reg, Word value);

double distance(const QState& a, const QState& b);
Amplitude inner_product(const QState& a, const QState& b);

// Debug dump: the registers and [index, re, im] for amplitudes above threshold.
nlohmann::json dump_json(const QState& state, double threshold = 0.0);

// A gate list that can be replayed forward or as its exact adjoint.
class Program {
 public:
  using Step = std::function<void(QState&)>;

  Program& add(Step forward, Step adjoint);
  // For gates that are their own inverse.
  Program& add_involution(Step gate);

  void run(QState& state) const;
  void run_adjoint(QState& state) const;
  std::size_t size() const { return forward_.size(); }

 private:
  std::vector<Step> forward_;
  std::vector<Step> adjoint_;
};

}  // namespace offsim::qsim
