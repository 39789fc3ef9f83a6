#include "offsim/qsim.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace offsim::qsim {

int default_qubit_cap() {
  if (const char* env = std::getenv("OFFLINE_SIMON_QUBIT_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 34) return static_cast<int>(v);
  }
  return kDefaultQubitCap;
}

RegisterLayout& RegisterLayout::add(std::string name, int width) {
  if (width <= 0 || width > kMaxWidth) throw RegisterError("register width out of range: " + name);
  for (const auto& r : registers_) {
    if (r.name == name) throw RegisterError("duplicate register " + name);
  }
  registers_.push_back({std::move(name), qubits_, width});
  qubits_ += width;
  return *this;
}

const Register& RegisterLayout::operator[](std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return r;
  }
  throw RegisterError("unknown register " + std::string(name));
}

QState::QState(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << layout_.qubits())) {
    throw RegisterError("amplitude vector does not match layout");
  }
}

double QState::norm() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

QState init_zero(const RegisterLayout& layout, int cap) {
  if (layout.qubits() > cap) {
    throw CapacityError("circuit needs " + std::to_string(layout.qubits()) + " qubits, cap is " +
                        std::to_string(cap) + " (set OFFLINE_SIMON_QUBIT_CAP to raise it)");
  }
  std::vector<Amplitude> amps(std::size_t{1} << layout.qubits());
  amps[0] = 1.0;
  return {layout, std::move(amps)};
}

namespace {

// Apply u to qubit q of every amplitude pair whose index satisfies `keep`.
template <class Keep>
void apply_pairs(std::span<Amplitude> amps, int q, const Matrix2& u, Keep keep) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    if (!keep(i)) continue;
    const Amplitude a = amps[i];
    const Amplitude b = amps[i | bit];
    amps[i] = u[0] * a + u[1] * b;
    amps[i | bit] = u[2] * a + u[3] * b;
  }
}

// Out-of-place permutation of basis states.
template <class Map>
void permute(QState& state, Map map) {
  auto amps = state.amplitudes();
  std::vector<Amplitude> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] != Amplitude{}) out[map(i)] += amps[i];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

}  // namespace

void apply_h(QState& state, std::string_view reg) {
  const auto& r = state.reg(reg);
  const double s = std::numbers::sqrt2 / 2;
  const Matrix2 h{s, s, s, -s};
  for (int b = 0; b < r.width; ++b) {
    apply_pairs(state.amplitudes(), r.offset + b, h, [](std::size_t) { return true; });
  }
}

void apply_xor_constant(QState& state, std::string_view reg, Word constant) {
  const auto& r = state.reg(reg);
  if (constant & ~width_mask(r.width)) throw RegisterError("constant wider than register");
  const std::size_t flip = std::size_t{constant} << r.offset;
  permute(state, [flip](std::size_t i) { return i ^ flip; });
}

void apply_x(QState& state, std::string_view reg) {
  const std::size_t mask = state.reg(reg).mask();
  permute(state, [mask](std::size_t i) { return i ^ mask; });
}

void apply_single_qubit(QState& state, std::string_view reg, int bit, const Matrix2& u) {
  const auto& r = state.reg(reg);
  if (bit < 0 || bit >= r.width) throw RegisterError("qubit index out of range");
  apply_pairs(state.amplitudes(), r.offset + bit, u, [](std::size_t) { return true; });
}

void apply_controlled_single_qubit(QState& state, std::string_view control,
                                   const std::function<bool(Word)>& predicate,
                                   std::string_view target, int bit, const Matrix2& u) {
  const auto& c = state.reg(control);
  const auto& t = state.reg(target);
  if (bit < 0 || bit >= t.width) throw RegisterError("qubit index out of range");
  apply_pairs(state.amplitudes(), t.offset + bit, u,
              [&](std::size_t i) { return predicate(c.extract(i)); });
}

void apply_oracle_xor(QState& state, const TruthTable& f, std::string_view in, std::string_view out) {
  const auto& x = state.reg(in);
  const auto& y = state.reg(out);
  if (x.width != f.in_width || y.width != f.out_width) {
    throw RegisterError("oracle signature does not match registers");
  }
  permute(state, [&](std::size_t i) { return i ^ (std::size_t{f(x.extract(i))} << y.offset); });
}

void apply_indexed_oracle(QState& state, const IndexedFamily& family, std::string_view index,
                          std::string_view in, std::string_view out) {
  const auto& idx = state.reg(index);
  const auto& x = state.reg(in);
  const auto& y = state.reg(out);
  if (idx.width != family.index_width || x.width != family.in_width || y.width != family.out_width) {
    throw RegisterError("indexed oracle signature does not match registers");
  }
  permute(state, [&](std::size_t i) {
    return i ^ (std::size_t{family(idx.extract(i), x.extract(i))} << y.offset);
  });
}

void apply_controlled_xor_constant(QState& state, std::string_view control, Word match,
                                   std::string_view target, Word constant) {
  const auto& c = state.reg(control);
  const auto& t = state.reg(target);
  if (constant & ~width_mask(t.width)) throw RegisterError("constant wider than target");
  const std::size_t flip = std::size_t{constant} << t.offset;
  permute(state, [&](std::size_t i) { return c.extract(i) == match ? i ^ flip : i; });
}

void apply_phase_if(QState& state, std::string_view reg, const std::function<bool(Word)>& predicate) {
  const auto& r = state.reg(reg);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (predicate(r.extract(i))) amps[i] = -amps[i];
  }
}

void apply_reflection_about_zero(QState& state, std::string_view reg) {
  apply_phase_if(state, reg, [](Word v) { return v == 0; });
}

void apply_predicate_flip(QState& state, std::span<const std::string> registers,
                          const std::function<bool(std::span<const Word>)>& predicate,
                          std::string_view target) {
  std::vector<const Register*> regs;
  for (const auto& name : registers) regs.push_back(&state.reg(name));
  const std::size_t flip = std::size_t{1} << state.reg(target).offset;
  std::vector<Word> vals(regs.size());
  permute(state, [&](std::size_t i) {
    for (std::size_t k = 0; k < regs.size(); ++k) vals[k] = regs[k]->extract(i);
    return predicate(vals) ? i ^ flip : i;
  });
}

void apply_global_phase(QState& state, Amplitude phase) {
  for (auto& a : state.amplitudes()) a *= phase;
}

std::vector<double> marginal(const QState& state, std::string_view reg) {
  const auto& r = state.reg(reg);
  std::vector<double> out(std::size_t{1} << r.width, 0.0);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) out[r.extract(i)] += std::norm(amps[i]);
  return out;
}

double prob_of(const QState& state, std::string_view reg, Word value) {
  const auto& r = state.reg(reg);
  double p = 0;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (r.extract(i) == value) p += std::norm(amps[i]);
  }
  return p;
}

void collapse(QState& state, std::string_view reg, Word value) {
  const double p = prob_of(state, reg, value);
  if (p <= 0) throw std::domain_error("collapse onto a zero-probability outcome");
  const auto& r = state.reg(reg);
  const double scale = 1.0 / std::sqrt(p);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = r.extract(i) == value ? amps[i] * scale : Amplitude{};
  }
}

Word measure(QState& state, std::string_view reg, Rng& rng) {
  const auto probs = marginal(state, reg);
  double u = random_unit(rng);
  Word outcome = 0;
  for (std::size_t v = 0; v < probs.size(); ++v) {
    if (probs[v] <= 0) continue;
    outcome = static_cast<Word>(v);
    if (u < probs[v]) break;
    u -= probs[v];
  }
  collapse(state, reg, outcome);
  return outcome;
}

Amplitude inner_product(const QState& a, const QState& b) {
  if (a.dimension() != b.dimension()) throw RegisterError("states have different dimensions");
  Amplitude s{};
  auto x = a.amplitudes();
  auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double distance(const QState& a, const QState& b) {
  if (a.dimension() != b.dimension()) throw RegisterError("states have different dimensions");
  double s = 0;
  auto x = a.amplitudes();
  auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
  return std::sqrt(s);
}

nlohmann::json dump_json(const QState& state, double threshold) {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : state.layout().registers()) {
    regs.push_back({{"name", r.name}, {"offset", r.offset}, {"width", r.width}});
  }
  nlohmann::json amps = nlohmann::json::array();
  auto a = state.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > threshold) amps.push_back({i, a[i].real(), a[i].imag()});
  }
  return {{"registers", regs}, {"amplitudes", amps}};
}

Program& Program::add(Step forward, Step adjoint) {
  forward_.push_back(std::move(forward));
  adjoint_.push_back(std::move(adjoint));
  return *this;
}

Program& Program::add_involution(Step gate) {
  forward_.push_back(gate);
  adjoint_.push_back(std::move(gate));
  return *this;
}

void Program::run(QState& state) const {
  for (const auto& s : forward_) s(state);
}

void Program::run_adjoint(QState& state) const {
  for (auto it = adjoint_.rbegin(); it != adjoint_.rend(); ++it) (*it)(state);
}

}  // namespace offsim::qsim
