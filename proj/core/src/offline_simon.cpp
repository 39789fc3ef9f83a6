#include "offsim/offline_simon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "offsim/qsim.hpp"
#include "offsim/simon.hpp"

namespace offsim {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::exact: return "exact";
    case Backend::structured: return "structured";
    case Backend::sampled: return "sampled";
  }
  return "unknown";
}

Backend backend_from_string(std::string_view s) {
  if (s == "exact") return Backend::exact;
  if (s == "structured") return Backend::structured;
  if (s == "sampled") return Backend::sampled;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

GDatabase acquire_q2(OnlineOracle& g, int c) {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  GDatabase db;
  db.copies = c * g.in_width();
  // Every copy is one superposition query; the tables are identical.
  for (int j = 0; j < db.copies; ++j) db.g = g.superposition_query();
  db.acquisition = Acquisition::q2_superposition;
  return db;
}

GDatabase acquire_q1(OnlineOracle& g, int c) {
  return database_from_codebook(collect_codebook(g, g.in_width()), c);
}

GDatabase database_from_codebook(TruthTable codebook, int c) {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  GDatabase db;
  db.copies = c * codebook.in_width;
  db.g = std::move(codebook);
  db.acquisition = Acquisition::q1_codebook;
  return db;
}

double c_precise(int m, int n) {
  return (m + 3 + 2 * std::log2(std::numbers::pi)) / (n * std::log2(4.0 / 3.0));
}

double c_rounded(int m, int n) { return m / (n * std::log2(4.0 / 3.0)); }

int default_c(int m, int n) {
  return std::max(1, static_cast<int>(std::ceil(c_precise(m, n))));
}

double delta_norm_bound(int n, int c, double eps) {
  return std::exp2((n + 1) / 2.0) * std::pow((1 + eps) / 2, c * n / 2.0);
}

ErrorBudget error_budget(int n, int m, int c, double eps) {
  ErrorBudget b;
  b.eps = eps;
  b.delta_norm_bound = delta_norm_bound(n, c, eps);
  b.per_iteration = 2 * b.delta_norm_bound;
  b.r = qaa::grover_iterations(m);
  b.success_lower = qaa::noisy_prediction(std::ldexp(1.0, -m), b.delta_norm_bound, b.r).lower;
  return b;
}

nlohmann::json OfflineReport::to_json() const {
  nlohmann::json j{{"backend", to_string(backend)},
                   {"n", n},
                   {"m", m},
                   {"l", l},
                   {"c", c},
                   {"u", u},
                   {"counters", counters.to_json()},
                   {"eps", eps},
                   {"delta_bound", delta_bound},
                   {"ideal_success", ideal_success},
                   {"success_lower", success_lower},
                   {"condition_violated", condition_violated},
                   {"c_too_small", c_too_small},
                   {"flags", flags}};
  j["recovered"] = recovered ? nlohmann::json(*recovered) : nlohmann::json(nullptr);
  j["correct"] = correct ? nlohmann::json(*correct) : nlohmann::json(nullptr);
  if (!branches.empty()) {
    auto& arr = j["branches"] = nlohmann::json::array();
    for (const auto& b : branches) {
      arr.push_back({{"index", b.index},
                     {"periodic", b.periodic},
                     {"p_bad", b.p_bad},
                     {"half_width", b.half_width},
                     {"union_bound", b.union_bound}});
    }
  }
  return j;
}

int exact_qubits(int m, int n, int l, int c) { return m + c * n * (n + l) + 1; }

namespace {

Word sample_index(const std::vector<double>& probs, Rng& rng) {
  double total = 0;
  for (double p : probs) total += p;
  double u = random_unit(rng) * total;
  Word last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0) continue;
    last = static_cast<Word>(i);
    if (u < probs[i]) return last;
    u -= probs[i];
  }
  return last;
}

// Ideal amplitude amplification over a known marked set with r iterations
// fixed by the single-target count.
std::vector<double> ideal_index_law(std::size_t size, const std::vector<bool>& marked, int r) {
  const auto k = static_cast<std::size_t>(std::count(marked.begin(), marked.end(), true));
  std::vector<double> law(size);
  if (k == 0 || k == size) {
    std::fill(law.begin(), law.end(), 1.0 / static_cast<double>(size));
    return law;
  }
  const double theta = std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(size)));
  const double s = std::sin((2 * r + 1) * theta);
  const double p_marked = s * s;
  for (std::size_t i = 0; i < size; ++i) {
    law[i] = marked[i] ? p_marked / static_cast<double>(k)
                       : (1 - p_marked) / static_cast<double>(size - k);
  }
  return law;
}

struct BranchAnalysis {
  std::vector<bool> periodic;
  std::size_t periodic_count = 0;
};

BranchAnalysis analyse(const IndexedFamily& h, int c, OfflineReport& rep) {
  BranchAnalysis a;
  a.periodic.assign(h.index_count(), false);
  for (const auto& b : periodic_branches(h)) a.periodic[b.index] = true;
  a.periodic_count = static_cast<std::size_t>(std::count(a.periodic.begin(), a.periodic.end(), true));

  Word i0 = static_cast<Word>(h.index_count());  // out of range: maximize over all
  if (a.periodic_count == 1) {
    i0 = static_cast<Word>(std::find(a.periodic.begin(), a.periodic.end(), true) - a.periodic.begin());
  } else if (a.periodic_count == 0) {
    rep.flags.push_back("no-periodic-index");
  } else {
    rep.flags.push_back("multiple-periodic-indices");
  }
  const auto eps = epsilon_max(h, i0);
  const int m = h.index_width;
  const int n = h.in_width;
  const auto budget = error_budget(n, m, c, eps.eps_max);
  rep.eps = eps.eps_max;
  rep.delta_bound = budget.delta_norm_bound;
  rep.success_lower = budget.success_lower;
  rep.ideal_success = qaa::ideal_success(std::ldexp(1.0, -m), budget.r);
  rep.condition_violated = eps.eps_max > 0.5;
  rep.c_too_small = c < c_precise(m, n);
  if (rep.condition_violated) rep.flags.push_back("condition-violated");
  if (rep.c_too_small) rep.flags.push_back("c-too-small");
  return a;
}

void fill_shots(OfflineResult& res, const SearchOptions& opt, Rng& rng) {
  res.shots.resize(std::max<std::size_t>(1, opt.shots));
  for (auto& s : res.shots) s = sample_index(res.index_distribution, rng);
  res.measured = res.shots.front();
}

void check_family(const IndexedFamily& h, int c) {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  if (h.in_width > simon::kMaxSimonWidth) throw WidthError("offline search limited to n <= 20");
  if (h.in_width < 1) throw WidthError("offline search needs n >= 1");
}

OfflineResult search_exact(const IndexedFamily& family, const GDatabase& db, int c, Rng& rng,
                           const SearchOptions& opt) {
  const int m = family.index_width;
  const int n = db.width();
  const int l = db.g.out_width;
  if (m < 1) throw std::invalid_argument("exact backend needs an index register (m >= 1)");
  const int copies = c * n;

  qaa::GroverCircuit circuit;
  circuit.layout.add("idx", m);
  std::vector<std::string> xs;
  std::vector<std::string> ys;
  for (int j = 0; j < copies; ++j) {
    xs.push_back("x" + std::to_string(j));
    ys.push_back("y" + std::to_string(j));
    circuit.layout.add(xs.back(), n).add(ys.back(), l);
  }
  circuit.layout.add("b", 1);
  const int cap = qsim::default_qubit_cap();
  if (circuit.layout.qubits() > cap) {
    throw qsim::CapacityError("exact backend needs " + std::to_string(circuit.layout.qubits()) +
                              " qubits, cap is " + std::to_string(cap));
  }

  circuit.prepare = [&](qsim::QState& s) {
    for (int j = 0; j < copies; ++j) {
      qsim::apply_h(s, xs[j]);
      qsim::apply_oracle_xor(s, db.g, xs[j], ys[j]);
    }
    qsim::apply_xor_constant(s, "b", 1);
    qsim::apply_h(s, "b");
  };
  auto rank_deficient = [n](std::span<const Word> us) { return rank_of(us, n) < n; };
  circuit.check = [&](qsim::QState& s) {
    for (int j = 0; j < copies; ++j) {
      qsim::apply_indexed_oracle(s, family, "idx", xs[j], ys[j]);
      qsim::apply_h(s, xs[j]);
    }
    qsim::apply_predicate_flip(s, xs, rank_deficient, "b");
    for (int j = 0; j < copies; ++j) {
      qsim::apply_h(s, xs[j]);
      qsim::apply_indexed_oracle(s, family, "idx", xs[j], ys[j]);
    }
  };

  const int r = qaa::grover_iterations(m);
  auto state = qaa::prepare_grover(circuit);
  for (int j = 0; j < r; ++j) qaa::grover_iteration(state, "idx", circuit.check);

  OfflineResult res;
  res.index_distribution = qsim::marginal(state, "idx");
  fill_shots(res, opt, rng);
  return res;
}

}  // namespace

OfflineResult offline_search_branches(const IndexedFamily& h, int c, Backend backend, Rng& rng,
                                      const SearchOptions& opt) {
  check_family(h, c);
  if (backend == Backend::exact) {
    throw std::invalid_argument("exact backend needs the family and database separately");
  }
  const int m = h.index_width;
  const int n = h.in_width;
  OfflineResult res;
  auto& rep = res.report;
  rep.backend = backend;
  rep.n = n;
  rep.m = m;
  rep.l = h.out_width;
  rep.c = c;
  rep.u = n;
  const auto a = analyse(h, c, rep);
  const int r = qaa::grover_iterations(m);
  rep.counters.grover_iterations = static_cast<std::uint64_t>(r);
  rep.counters.f_queries = 2ULL * c * n * r;

  const std::size_t size = h.index_count();
  if (backend == Backend::structured) {
    res.index_distribution = ideal_index_law(size, a.periodic, r);
    if (opt.p_bad_trials > 0) {
      for (Word i = 0; i < size; ++i) {
        BranchRecord b{i, a.periodic[i]};
        if (!b.periodic) {
          const auto est = simon::p_bad_estimate(h.branch(i), c, opt.p_bad_trials, rng);
          b.p_bad = est.estimate;
          b.half_width = est.half_width;
          b.union_bound = est.union_bound;
        }
        rep.branches.push_back(b);
      }
    }
    fill_shots(res, opt, rng);
    return res;
  }

  // Sampled: each shot classifies every branch with a fresh cn-sample rank
  // test, then draws from ideal amplification over the resulting marked set.
  std::vector<std::optional<simon::Sampler>> samplers(size);
  for (Word i = 0; i < size; ++i) {
    if (!a.periodic[i]) samplers[i].emplace(h.branch(i));
  }
  res.shots.resize(std::max<std::size_t>(1, opt.shots));
  const int draws = c * n;
  for (auto& shot : res.shots) {
    std::vector<bool> marked = a.periodic;
    for (Word i = 0; i < size; ++i) {
      if (marked[i]) continue;
      Gf2Basis basis(n);
      for (int j = 0; j < draws && basis.dim() < n; ++j) basis.insert(samplers[i]->draw(rng));
      marked[i] = basis.dim() < n;
    }
    shot = sample_index(ideal_index_law(size, marked, r), rng);
  }
  res.measured = res.shots.front();
  return res;
}

OfflineResult offline_search(const IndexedFamily& family, const GDatabase& db, int c, Backend backend,
                             Rng& rng, const SearchOptions& opt) {
  if (family.in_width != db.g.in_width || family.out_width != db.g.out_width) {
    throw WidthError("family signature does not match the database");
  }
  const auto h = xor_with_family(family, db.g);
  if (backend != Backend::exact) {
    auto res = offline_search_branches(h, c, backend, rng, opt);
    return res;
  }
  check_family(h, c);
  auto res = search_exact(family, db, c, rng, opt);
  auto& rep = res.report;
  rep.backend = backend;
  rep.n = h.in_width;
  rep.m = h.index_width;
  rep.l = h.out_width;
  rep.c = c;
  rep.u = h.in_width;
  analyse(h, c, rep);
  const int r = qaa::grover_iterations(h.index_width);
  rep.counters.grover_iterations = static_cast<std::uint64_t>(r);
  rep.counters.f_queries = 2ULL * c * h.in_width * r;
  return res;
}

OfflineResult alg_poly_q2(const IndexedFamily& family, OnlineOracle& g, int c, Backend backend,
                          Rng& rng, const SearchOptions& options) {
  const QueryCounters before = g.counters();
  const auto db = acquire_q2(g, c);
  auto res = offline_search(family, db, c, backend, rng, options);
  res.report.counters.quantum_online = g.counters().quantum_online - before.quantum_online;
  res.report.counters.classical_online = g.counters().classical_online - before.classical_online;
  return res;
}

OfflineResult alg_exp_q1(const IndexedFamily& family, OnlineOracle& g, int c, Backend backend,
                         Rng& rng, const SearchOptions& options) {
  const QueryCounters before = g.counters();
  const auto db = acquire_q1(g, c);
  auto res = offline_search(family, db, c, backend, rng, options);
  res.report.counters.quantum_online = g.counters().quantum_online - before.quantum_online;
  res.report.counters.classical_online = g.counters().classical_online - before.classical_online;
  return res;
}

TestOutcome exact_test(const IndexedFamily& family, const GDatabase& db, Word i, int b) {
  const int m = family.index_width;
  const int n = db.width();
  const int l = db.g.out_width;
  const int copies = db.copies;
  qsim::RegisterLayout layout;
  layout.add("idx", std::max(m, 1));
  std::vector<std::string> xs;
  std::vector<std::string> ys;
  for (int j = 0; j < copies; ++j) {
    xs.push_back("x" + std::to_string(j));
    ys.push_back("y" + std::to_string(j));
    layout.add(xs.back(), n).add(ys.back(), l);
  }
  layout.add("b", 1);
  auto s = qsim::init_zero(layout);
  qsim::apply_xor_constant(s, "idx", i);
  for (int j = 0; j < copies; ++j) {
    qsim::apply_h(s, xs[j]);
    qsim::apply_oracle_xor(s, db.g, xs[j], ys[j]);
  }
  qsim::apply_xor_constant(s, "b", static_cast<Word>(b));
  const auto before = s;

  // The branch is fixed, so the family can be applied as the plain table f_i.
  const auto f = family.branch(i);
  for (int j = 0; j < copies; ++j) {
    qsim::apply_oracle_xor(s, f, xs[j], ys[j]);
    qsim::apply_h(s, xs[j]);
  }
  qsim::apply_predicate_flip(s, xs, [n](std::span<const Word> us) { return rank_of(us, n) < n; }, "b");
  for (int j = 0; j < copies; ++j) {
    qsim::apply_h(s, xs[j]);
    qsim::apply_oracle_xor(s, f, xs[j], ys[j]);
  }
  TestOutcome out;
  out.flip_probability = qsim::prob_of(s, "b", static_cast<Word>(b ^ 1));
  out.restoration_distance = qsim::distance(before, s);
  out.qubits = layout.qubits();
  return out;
}

int sampled_test(const TruthTable& h, int c, int b, Rng& rng) {
  simon::Sampler sampler(h);
  const int n = h.in_width;
  std::vector<Word> us(static_cast<std::size_t>(c) * n);
  for (auto& u : us) u = sampler.draw(rng);
  return b ^ (rank_of(us, n) < n ? 1 : 0);
}

SimQ1Result recover_period(const TruthTable& f, const TruthTable& codebook, int c, Rng& rng) {
  const auto h = xor_tables(f, codebook);
  const auto run = simon::run(h, c, rng);
  SimQ1Result res;
  res.rank = run.rank;
  if (run.verdict == simon::Verdict::period) res.period = run.period;
  return res;
}

SimQ1Result sim_q1(const TruthTable& f, OnlineOracle& g, int c, Rng& rng) {
  const QueryCounters before = g.counters();
  const auto codebook = collect_codebook(g, f.in_width);
  auto res = recover_period(f, codebook, c, rng);
  res.counters.classical_online = g.counters().classical_online - before.classical_online;
  return res;
}

}  // namespace offsim
