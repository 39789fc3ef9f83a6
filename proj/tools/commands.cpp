#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "offsim/analysis.hpp"
#include "offsim/qaa.hpp"
#include "offsim/simon.hpp"

namespace offsim::cli {

namespace {

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

TruthTable random_table(int n, int l, Rng& rng) {
  TruthTable t(n, l);
  for (auto& v : t.values) v = random_word(rng, l);
  return t;
}

// h(x) = r(min(x, x ^ s)) for random r: s-periodic, generically nothing else.
TruthTable random_periodic(int n, Word s, Rng& rng) {
  TruthTable t(n, n);
  std::vector<Word> r(std::size_t{1} << n);
  for (auto& v : r) v = random_word(rng, n);
  for (Word x = 0; x < t.size(); ++x) t.values[x] = r[std::min(x, x ^ s)];
  return t;
}

}  // namespace

nlohmann::json run_attacks(const AttackConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("--trials must be at least 1");
  if (cfg.jobs < 1) throw ConfigError("--jobs must be at least 1");
  try {
    validate(cfg.params);
  } catch (const qsim::CapacityError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("capacity", 0) == 0) throw qsim::CapacityError(msg);
    throw ConfigError(msg);
  }

  std::vector<nlohmann::json> reports(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) {
      const std::uint64_t seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t));
      try {
        auto rep = run_attack(cfg.params, seed);
        if (!cfg.timing) rep.wall_seconds.reset();
        reports[t] = rep.to_json();
      } catch (const std::exception& e) {
        reports[t] = {{"seed", seed}, {"error", e.what()}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min(cfg.jobs, cfg.trials); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int successes = 0;
  bool completed = true;
  for (const auto& r : reports) {
    if (r.contains("error")) completed = false;
    else if (r.at("verified").get<bool>()) ++successes;
  }
  const auto& p = cfg.params;
  return {{"command", "attack"},
          {"kind", p.kind},
          {"params",
           {{"n", p.n}, {"m", p.m}, {"u", p.u}, {"c", p.c}, {"rounds", p.rounds}, {"rate", p.rate},
            {"capacity", p.capacity}, {"backend", to_string(p.backend)}}},
          {"seed", cfg.seed},
          {"trials", cfg.trials},
          {"successes", successes},
          {"success_rate", static_cast<double>(successes) / cfg.trials},
          {"completed", completed},
          {"reports", reports}};
}

std::string attacks_csv(const nlohmann::json& doc) {
  std::ostringstream os;
  os << "seed,verified,keys_match,D,T,T_iterations,Q,M,log2_DT2,flags\n";
  for (const auto& r : doc.at("reports")) {
    if (r.contains("error")) {
      os << r.at("seed").get<std::uint64_t>() << ",error,,,,,,,,\n";
      continue;
    }
    const double d = r.at("D").get<double>();
    const double it = r.at("T_iterations").get<double>();
    std::string flags;
    for (const auto& f : r.at("flags")) flags += (flags.empty() ? "" : ";") + f.get<std::string>();
    os << r.at("seed").get<std::uint64_t>() << ',' << r.at("verified").get<bool>() << ','
       << r.at("keys_match").get<bool>() << ',' << r.at("D").get<std::uint64_t>() << ','
       << r.at("T").get<std::uint64_t>() << ',' << r.at("T_iterations").get<std::uint64_t>() << ','
       << r.at("Q").get<int>() << ',' << r.at("M").get<std::uint64_t>() << ','
       << (d > 0 && it > 0 ? fixed(std::log2(d) + 2 * std::log2(it)) : "") << ',' << flags << '\n';
  }
  return os.str();
}

std::string run_estimate(const EstimateConfig& cfg, bool json) {
  std::optional<estimate::TimeConvention> conv;
  try {
    if (cfg.convention) conv = estimate::convention_from_string(*cfg.convention);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (cfg.table) {
    if (*cfg.table == "1") return estimate::table1_csv(conv);
    if (*cfg.table == "em") {
      if (!cfg.n) throw ConfigError("--table em needs --n");
      return estimate::tradeoff_csv(estimate::em_tradeoffs(*cfg.n));
    }
    if (*cfg.table == "fx") {
      if (!cfg.n || !cfg.m) throw ConfigError("--table fx needs --n and --m");
      return estimate::tradeoff_csv(estimate::fx_tradeoffs(*cfg.n, *cfg.m));
    }
    throw ConfigError("--table must be 1, em or fx");
  }

  std::vector<estimate::Estimate> rows;
  try {
    if (cfg.preset) {
      if (*cfg.preset == "all") {
        for (const auto& name : estimate::preset_names()) rows.push_back(estimate::preset(name, conv));
      } else {
        rows.push_back(estimate::preset(*cfg.preset, conv));
      }
    } else {
      if (!cfg.n || !cfg.m) throw ConfigError("estimate needs --preset or both --n and --m");
      estimate::Params p;
      p.n = *cfg.n;
      p.m = *cfg.m;
      if (cfg.u) {
        p.model = estimate::Model::q1;
        p.data = *cfg.u;
      }
      if (conv) p.convention = *conv;
      rows.push_back(estimate::estimate_costs(p));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : rows) arr.push_back(e.to_json());
    return nlohmann::json{{"command", "estimate"}, {"estimates", arr}}.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& e : rows) {
    const auto& p = e.params;
    os << p.target << " (" << to_string(p.model) << ", n=" << p.n << ", m=" << p.m;
    if (p.model == estimate::Model::q1) os << ", u=" << p.data;
    os << ")\n"
       << "  c precise      " << fixed(e.c_precise) << "\n"
       << "  c rounded      " << fixed(e.c_rounded) << "\n"
       << "  queries        " << e.queries << "\n"
       << "  log2 D         " << fixed(e.log2_data, 2) << "\n"
       << "  log2 iter      " << fixed(e.log2_iterations, 2) << "\n"
       << "  log2 T         " << fixed(e.log2_time, 2) << "  [" << to_string(p.convention) << "]\n"
       << "  Q              " << e.qubits << "\n"
       << "  log2 M         " << fixed(e.log2_memory, 2) << "\n";
    if (e.security_floor) os << "  log2 floor     " << fixed(*e.security_floor, 0) << "\n";
    if (!e.note.empty()) os << "  note           " << e.note << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json pbad_suite(int n, int c, std::uint64_t trials, int functions, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x70626164ULL);
  nlohmann::json rows = nlohmann::json::array();
  bool holds = true;
  double worst_bound = 0;
  for (int f = 0; f < functions; ++f) {
    TruthTable h;
    do {
      h = random_table(n, n, rng);
    } while (!find_periods(h).empty());
    const auto est = simon::p_bad_estimate(h, c, trials, rng);
    const double sigma = std::sqrt(std::max(est.estimate * (1 - est.estimate), 1.0 / trials) / trials);
    const bool ok = est.estimate <= est.bound + 3 * sigma;
    holds = holds && ok;
    worst_bound = std::max(worst_bound, est.bound);
    rows.push_back({{"eps", est.eps},
                    {"measured", est.estimate},
                    {"half_width", est.half_width},
                    {"bound", est.bound},
                    {"union_bound", est.union_bound},
                    {"holds", ok}});
  }
  nlohmann::json out{{"name", "pbad"},
                     {"n", n},
                     {"c", c},
                     {"trials", trials},
                     {"functions", rows},
                     {"holds", holds},
                     {"sufficient_condition", {{"bound", worst_bound}, {"holds", worst_bound < 1}}}};
  return out;
}

nlohmann::json prop1_suite(int n, int c, int functions, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x70726f70ULL);
  int ok = 0;
  for (int f = 0; f < functions; ++f) {
    Word s = 0;
    TruthTable h;
    do {
      s = 1 + static_cast<Word>(random_below(rng, (std::uint64_t{1} << n) - 1));
      h = random_periodic(n, s, rng);
    } while (periodic_condition(h, s) > 0.5 || find_periods(h) != std::vector<Word>{s});
    const auto r = simon::run(h, c, rng);
    if (r.verdict == simon::Verdict::period && r.period == s) ++ok;
  }
  const double fail = simon::prop1_failure_bound(n, c);
  const double target = std::max(0.0, 1 - fail);
  const double sigma = std::sqrt(std::max(target * (1 - target), 1.0 / functions) / functions);
  const double rate = static_cast<double>(ok) / functions;
  return {{"name", "prop1"},
          {"n", n},
          {"c", c},
          {"functions", functions},
          {"measured", rate},
          {"bound", target},
          {"slack", 3 * sigma},
          {"holds", rate >= target - 3 * sigma},
          {"sufficient_condition", {{"bound", fail}, {"holds", fail < 1}}}};
}

nlohmann::json qaa_suite(std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x716161ULL);
  nlohmann::json rows = nlohmann::json::array();
  bool holds = true;
  for (int m : {2, 4}) {
    const Word target = static_cast<Word>(random_below(rng, std::uint64_t{1} << m));
    auto marked = [target](Word i) { return i == target; };
    const auto out = qaa::build_and_run_grover(m, marked, rng, 1);
    const double a = std::ldexp(1.0, -m);
    const double ideal = qaa::ideal_success(a, out.iterations);
    const double err = std::abs(out.index_distribution[target] - ideal);
    holds = holds && err <= 1e-9;
    rows.push_back({{"check", "exact"}, {"a", a}, {"r", out.iterations}, {"measured", out.index_distribution[target]},
                    {"ideal", ideal}, {"holds", err <= 1e-9}});
  }
  const double angle = 0.05;
  const double eps = qaa::noisy_phase_check_error(angle);
  const Word target = 3;
  const auto devs = qaa::noisy_deviations(4, [target](Word i) { return i == target; }, angle, 8);
  for (std::size_t j = 0; j < devs.size(); ++j) {
    const double bound = 4.0 * static_cast<double>(j + 1) * eps;
    const bool ok = devs[j] <= bound;
    holds = holds && ok;
    rows.push_back({{"check", "noisy"}, {"j", j + 1}, {"eps", eps}, {"measured", devs[j]}, {"bound", bound},
                    {"holds", ok}});
  }
  return {{"name", "qaa"}, {"checks", rows}, {"holds", holds}};
}

}  // namespace

nlohmann::json run_verify_bounds(const BoundsConfig& cfg) {
  const auto& s = cfg.suite;
  if (s != "all" && s != "pbad" && s != "prop1" && s != "qaa") throw ConfigError("unknown suite '" + s + "'");
  if (cfg.n < 0 || cfg.n > simon::kMaxSimonWidth) throw ConfigError("--n must lie in [1, 20]");
  if (cfg.c < 0) throw ConfigError("--c must be positive");
  if (cfg.functions < 0) throw ConfigError("--functions must be positive");

  nlohmann::json suites = nlohmann::json::array();
  if (s == "all" || s == "pbad") {
    suites.push_back(pbad_suite(cfg.n ? cfg.n : 6, cfg.c ? cfg.c : 3, cfg.trials ? cfg.trials : 10000,
                                cfg.functions ? cfg.functions : 20, cfg.seed));
  }
  if (s == "all" || s == "prop1") {
    suites.push_back(prop1_suite(cfg.n ? cfg.n : 8, cfg.c ? cfg.c : 3, cfg.functions ? cfg.functions : 500,
                                 cfg.seed));
  }
  if (s == "all" || s == "qaa") suites.push_back(qaa_suite(cfg.seed));

  bool all = true;
  bool too_small = false;
  for (const auto& suite : suites) {
    all = all && suite.at("holds").get<bool>();
    if (suite.contains("sufficient_condition")) {
      too_small = too_small || !suite.at("sufficient_condition").at("holds").get<bool>();
    }
  }
  nlohmann::json flags = nlohmann::json::array();
  if (too_small) flags.push_back("c-too-small");
  return {{"command", "verify-bounds"}, {"seed", cfg.seed}, {"suites", suites}, {"all_hold", all}, {"flags", flags}};
}

std::string run_gen(const GenConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxWidth) throw WidthError("--n must lie in [1, 24]");
  if (cfg.what == "permutation") return save_permutation(random_permutation(cfg.n, cfg.seed));
  if (cfg.what == "cipher") {
    if (cfg.m < 0 || cfg.m > BlockCipherFamily::kMaxTabulatedKeyWidth || cfg.n + cfg.m > kMaxWidth) {
      throw WidthError("cipher family too wide to tabulate");
    }
    const auto family = random_cipher_family(cfg.n, cfg.m, cfg.seed);
    nlohmann::json tables = nlohmann::json::array();
    for (Word k = 0; k < (Word{1} << cfg.m); ++k) tables.push_back(save_permutation(family.permutation(k)));
    return nlohmann::json{{"n", cfg.n}, {"m", cfg.m}, {"seed", cfg.seed}, {"tables", tables}}.dump(2) + "\n";
  }
  if (cfg.what != "instance") throw ConfigError("gen target must be permutation, cipher or instance");

  InstanceDescriptor d;
  d.kind = cfg.kind;
  d.n = cfg.n;
  d.m = cfg.m;
  d.seed = cfg.seed;
  nlohmann::json extra;
  if (cfg.kind == "em") {
    d.m = 0;
    const auto b = make_em_instance(cfg.n, cfg.u, cfg.seed);
    d.keys = {{"k1", b.inst.k1}, {"k2", b.inst.k2}};
    const auto p = em_q1_problem(b.inst, cfg.u);
    extra = {{"u", cfg.u}, {"attempts", b.attempts}, {"planted_period", p.planted_period},
             {"screen", passes_screen(p)}};
  } else if (cfg.kind == "fx") {
    const auto b = make_fx_q1_instance(cfg.n, cfg.m, cfg.u, cfg.seed);
    d.keys = {{"k", b.inst.k}, {"k_in", b.inst.k_in}, {"k_out", b.inst.k_out}};
    extra = {{"u", cfg.u}, {"attempts", b.attempts}, {"screen", passes_screen(fx_q1_problem(b.inst, cfg.u))}};
  } else if (cfg.kind == "chaskey") {
    d.m = 0;
    const auto b = make_chaskey_instance(cfg.n, cfg.u, cfg.seed);
    d.keys = {{"K", b.inst.key}, {"K1", b.inst.k1}};
    extra = {{"u", cfg.u}, {"attempts", b.attempts}};
  } else if (cfg.kind == "related-key") {
    const auto b = make_related_key_instance(cfg.n, cfg.seed);
    d.m = cfg.n;
    d.keys = {{"k", b.oracle.key}};
    extra = {{"attempts", b.attempts}};
  } else {
    throw ConfigError("instance kind must be em, fx, chaskey or related-key");
  }
  auto j = d.to_json();
  j["build"] = extra;
  return j.dump(2) + "\n";
}

}  // namespace offsim::cli
