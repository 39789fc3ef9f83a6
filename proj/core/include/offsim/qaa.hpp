#pragma once

// Amplitude amplification: ideal rotation law, the noisy-check bound, and an
// exact circuit runner on top of qsim.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "offsim/qsim.hpp"
#include "offsim/rng.hpp"

namespace offsim::qaa {

struct QaaSpec {
  double a = 1;
  double theta = 0;  // sin^2(theta) = a
  int r = 0;         // floor(pi / (4 theta))
};

// Throws std::domain_error unless 0 < a <= 1.
QaaSpec spec_for(double a);
// a = marked / 2^m.
QaaSpec spec_for_count(int m, std::uint64_t marked);
// Iterations for a single good index among 2^m.
int grover_iterations(int m);

// sin^2((2j + 1) theta_a).
double ideal_success(double a, int j);

struct NoisyQaaPrediction {
  double a = 1;
  int r = 0;
  double ideal = 1;
  double epsilon = 0;
  double lower = 1;  // max(1 - a, a) - 4 r eps, clamped to [0, 1]

  double deviation_bound(int j) const { return 4.0 * j * epsilon; }
};

// `eps` is the per-call error of the phase-form check.
NoisyQaaPrediction noisy_prediction(double a, double eps, std::optional<int> r = std::nullopt);

// A bit-flip check that errs by eps becomes a phase check (through an
// ancilla in |->) that errs by at most 2 eps.
inline double phase_error_from_bitflip(double eps) { return 2.0 * eps; }

using Check = std::function<void(qsim::QState&)>;

// One iteration Q = -A S_0 A^-1 S_chi with A = H on the index register.
void grover_iteration(qsim::QState& state, std::string_view index, const Check& check);

// idx register (width m) plus any extra registers the check needs. `prepare`
// runs after the index has been put in uniform superposition.
struct GroverCircuit {
  qsim::RegisterLayout layout;
  std::string index = "idx";
  Check prepare;
  Check check;
};

qsim::QState prepare_grover(const GroverCircuit& circuit);

struct GroverOutcome {
  Word measured = 0;
  int iterations = 0;
  std::vector<double> index_distribution;
  bool unknown_count_heuristic = false;
};

// Builds the circuit for `marked`, applies r iterations (from the known count
// when given, else the single-target default and the heuristic flag), and
// measures the index.
GroverOutcome build_and_run_grover(int m, const std::function<bool(Word)>& marked, Rng& rng,
                                   std::optional<std::uint64_t> known_count = std::nullopt);

// Phase check on idx/anc/b that is exact on marked indices and on unmarked
// ones applies Ry(angle) to anc, CNOT anc -> b, Ry(-angle) to anc. With b in
// |->, the per-call error is 2 sin(angle / 2).
Check noisy_phase_check(const std::function<bool(Word)>& marked, double angle);
double noisy_phase_check_error(double angle);

// Distances || psi_j - psi'_j || between the exact and noisy-check states
// after j = 1..iterations Grover iterations on m index qubits.
std::vector<double> noisy_deviations(int m, const std::function<bool(Word)>& marked, double angle,
                                     int iterations);

}  // namespace offsim::qaa
