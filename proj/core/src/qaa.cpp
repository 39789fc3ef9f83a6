#include "offsim/qaa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace offsim::qaa {

QaaSpec spec_for(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("amplitude a must lie in (0, 1]");
  QaaSpec s;
  s.a = a;
  s.theta = std::asin(std::sqrt(a));
  s.r = static_cast<int>(std::floor(std::numbers::pi / (4.0 * s.theta)));
  return s;
}

QaaSpec spec_for_count(int m, std::uint64_t marked) {
  return spec_for(static_cast<double>(marked) / std::ldexp(1.0, m));
}

int grover_iterations(int m) { return spec_for(std::ldexp(1.0, -m)).r; }

double ideal_success(double a, int j) {
  const double s = std::sin((2 * j + 1) * spec_for(a).theta);
  return s * s;
}

NoisyQaaPrediction noisy_prediction(double a, double eps, std::optional<int> r) {
  if (eps < 0) throw std::domain_error("eps must be nonnegative");
  const QaaSpec s = spec_for(a);
  NoisyQaaPrediction p;
  p.a = a;
  p.r = r.value_or(s.r);
  p.ideal = ideal_success(a, p.r);
  p.epsilon = eps;
  p.lower = std::clamp(std::max(1.0 - a, a) - 4.0 * p.r * eps, 0.0, 1.0);
  return p;
}

void grover_iteration(qsim::QState& state, std::string_view index, const Check& check) {
  check(state);
  qsim::apply_h(state, index);
  qsim::apply_reflection_about_zero(state, index);
  qsim::apply_h(state, index);
  qsim::apply_global_phase(state, -1.0);
}

qsim::QState prepare_grover(const GroverCircuit& circuit) {
  auto state = qsim::init_zero(circuit.layout);
  qsim::apply_h(state, circuit.index);
  if (circuit.prepare) circuit.prepare(state);
  return state;
}

GroverOutcome build_and_run_grover(int m, const std::function<bool(Word)>& marked, Rng& rng,
                                   std::optional<std::uint64_t> known_count) {
  GroverCircuit circuit;
  circuit.layout.add("idx", m);
  circuit.check = [&](qsim::QState& s) { qsim::apply_phase_if(s, "idx", marked); };

  GroverOutcome out;
  if (known_count) {
    out.iterations = *known_count == 0 ? 0 : spec_for_count(m, *known_count).r;
  } else {
    out.iterations = grover_iterations(m);
    out.unknown_count_heuristic = true;
  }
  auto state = prepare_grover(circuit);
  for (int j = 0; j < out.iterations; ++j) grover_iteration(state, "idx", circuit.check);
  out.index_distribution = qsim::marginal(state, "idx");
  out.measured = qsim::measure(state, "idx", rng);
  return out;
}

namespace {

qsim::Matrix2 ry(double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  return {c, -s, s, c};
}

}  // namespace

Check noisy_phase_check(const std::function<bool(Word)>& marked, double angle) {
  return [marked, angle](qsim::QState& s) {
    static const std::string idx[] = {"idx"};
    static const std::string anc[] = {"anc"};
    auto unmarked = [&](Word i) { return !marked(i); };
    qsim::apply_predicate_flip(s, idx, [&](std::span<const Word> v) { return marked(v[0]); }, "b");
    qsim::apply_controlled_single_qubit(s, "idx", unmarked, "anc", 0, ry(angle));
    qsim::apply_predicate_flip(s, anc, [](std::span<const Word> v) { return v[0] == 1; }, "b");
    qsim::apply_controlled_single_qubit(s, "idx", unmarked, "anc", 0, ry(-angle));
  };
}

double noisy_phase_check_error(double angle) { return 2.0 * std::abs(std::sin(angle / 2)); }

std::vector<double> noisy_deviations(int m, const std::function<bool(Word)>& marked, double angle,
                                     int iterations) {
  auto circuit = [&](double a) {
    GroverCircuit c;
    c.layout.add("idx", m).add("anc", 1).add("b", 1);
    c.prepare = [](qsim::QState& s) {
      qsim::apply_x(s, "b");
      qsim::apply_h(s, "b");
    };
    c.check = noisy_phase_check(marked, a);
    return c;
  };
  const auto ideal_c = circuit(0.0);
  const auto noisy_c = circuit(angle);
  auto ideal = prepare_grover(ideal_c);
  auto noisy = prepare_grover(noisy_c);
  std::vector<double> out;
  for (int j = 1; j <= iterations; ++j) {
    grover_iteration(ideal, ideal_c.index, ideal_c.check);
    grover_iteration(noisy, noisy_c.index, noisy_c.check);
    out.push_back(qsim::distance(ideal, noisy));
  }
  return out;
}

}  // namespace offsim::qaa
