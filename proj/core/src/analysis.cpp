#include "offsim/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace offsim {

QueryCounters& QueryCounters::operator+=(const QueryCounters& o) {
  classical_online += o.classical_online;
  quantum_online += o.quantum_online;
  f_queries += o.f_queries;
  grover_iterations += o.grover_iterations;
  return *this;
}

nlohmann::json QueryCounters::to_json() const {
  return {{"classical_online", classical_online},
          {"quantum_online", quantum_online},
          {"f_queries", f_queries},
          {"grover_iterations", grover_iterations}};
}

OnlineOracle::OnlineOracle(int in_width, int out_width, std::function<Word(Word)> f)
    : in_width_(in_width), out_width_(out_width), f_(std::move(f)) {
  check_width(in_width);
  check_width(out_width);
}

Word OnlineOracle::classical(Word x) {
  if (x >> in_width_) throw WidthError("oracle input exceeds width");
  ++counters_.classical_online;
  return f_(x);
}

TruthTable OnlineOracle::superposition_query() {
  ++counters_.quantum_online;
  TruthTable t(in_width_, out_width_);
  for (Word x = 0; x < t.size(); ++x) t.values[x] = f_(x);
  return t;
}

TruthTable collect_codebook(OnlineOracle& oracle, int width) {
  if (width > oracle.in_width()) throw WidthError("codebook wider than oracle input");
  TruthTable t(width, oracle.out_width());
  for (Word x = 0; x < t.size(); ++x) t.values[x] = oracle.classical(x);
  return t;
}

std::vector<std::uint64_t> collision_counts(const TruthTable& h) {
  if (!h.complete()) throw WidthError("incomplete truth table");
  const std::size_t size = h.size();
  std::vector<Word> order(size);
  std::iota(order.begin(), order.end(), Word{0});
  std::stable_sort(order.begin(), order.end(), [&](Word a, Word b) { return h(a) < h(b); });

  std::vector<std::uint64_t> counts(size, 0);
  // Small classes: enumerate pairs. Large classes: accumulate the squared
  // spectrum and invert once, since the autocorrelation of an indicator is
  // the inverse transform of its squared transform.
  const std::size_t pair_budget = std::size_t(std::max(h.in_width, 1)) * size * 4;
  std::vector<double> spectrum;
  for (std::size_t b = 0; b < size;) {
    std::size_t e = b + 1;
    while (e < size && h(order[e]) == h(order[b])) ++e;
    const std::size_t k = e - b;
    if (k * k <= pair_budget) {
      for (std::size_t i = b; i < e; ++i) {
        for (std::size_t j = b; j < e; ++j) ++counts[order[i] ^ order[j]];
      }
    } else {
      if (spectrum.empty()) spectrum.assign(size, 0.0);
      std::vector<double> ind(size, 0.0);
      for (std::size_t i = b; i < e; ++i) ind[order[i]] = 1.0;
      fwht(ind);
      for (std::size_t u = 0; u < size; ++u) spectrum[u] += ind[u] * ind[u];
    }
    b = e;
  }
  if (!spectrum.empty()) {
    fwht(spectrum);
    for (std::size_t t = 0; t < size; ++t) {
      counts[t] += static_cast<std::uint64_t>(std::llround(spectrum[t] / static_cast<double>(size)));
    }
  }
  return counts;
}

std::vector<Word> find_periods(const TruthTable& f) {
  const auto counts = collision_counts(f);
  std::vector<Word> out;
  for (std::size_t s = 1; s < counts.size(); ++s) {
    if (counts[s] == counts.size()) out.push_back(static_cast<Word>(s));
  }
  return out;
}

double collision_prob(const TruthTable& h, Word t) {
  if (t == 0) throw std::invalid_argument("collision_prob: t must be nonzero");
  if (t >> h.in_width) throw WidthError("shift exceeds input width");
  std::size_t hits = 0;
  for (Word x = 0; x < h.size(); ++x) hits += h(x ^ t) == h(x);
  return static_cast<double>(hits) / static_cast<double>(h.size());
}

IndexedFamily xor_with_family(const IndexedFamily& family, const TruthTable& g) {
  if (g.in_width != family.in_width || g.out_width != family.out_width) {
    throw WidthError("g does not match the family signature");
  }
  IndexedFamily h = family;
  for (Word i = 0; i < family.index_count(); ++i) {
    for (Word x = 0; x < g.size(); ++x) h.at(i, x) ^= g(x);
  }
  return h;
}

nlohmann::json EpsilonReport::to_json() const {
  nlohmann::json j{{"eps_max", eps_max}, {"worst_i", worst_i}, {"worst_t", worst_t}};
  j["periodic_index"] = periodic_index ? nlohmann::json(*periodic_index) : nlohmann::json(nullptr);
  j["period"] = period ? nlohmann::json(*period) : nlohmann::json(nullptr);
  return j;
}

EpsilonReport epsilon_max(const IndexedFamily& h, Word i0) {
  EpsilonReport rep;
  const double size = static_cast<double>(std::size_t{1} << h.in_width);
  bool first = true;
  for (Word i = 0; i < h.index_count(); ++i) {
    const auto counts = collision_counts(h.branch(i));
    if (i == i0) {
      std::vector<Word> periods;
      for (std::size_t t = 1; t < counts.size(); ++t) {
        if (counts[t] == counts.size()) periods.push_back(static_cast<Word>(t));
      }
      if (periods.size() == 1) {
        rep.periodic_index = i0;
        rep.period = periods.front();
      }
      continue;
    }
    for (std::size_t t = 1; t < counts.size(); ++t) {
      const double p = static_cast<double>(counts[t]) / size;
      if (first || p > rep.eps_max) {
        rep.eps_max = p;
        rep.worst_i = i;
        rep.worst_t = static_cast<Word>(t);
        first = false;
      }
    }
  }
  return rep;
}

EpsilonReport epsilon_max(const IndexedFamily& family, const TruthTable& g, Word i0) {
  return epsilon_max(xor_with_family(family, g), i0);
}

double periodic_condition(const TruthTable& h, Word s) {
  const auto counts = collision_counts(h);
  std::uint64_t best = 0;
  for (std::size_t t = 1; t < counts.size(); ++t) {
    if (t != s) best = std::max(best, counts[t]);
  }
  return static_cast<double>(best) / static_cast<double>(counts.size());
}

std::vector<BranchPeriods> periodic_branches(const IndexedFamily& h) {
  std::vector<BranchPeriods> out;
  for (Word i = 0; i < h.index_count(); ++i) {
    auto periods = find_periods(h.branch(i));
    if (!periods.empty()) out.push_back({i, std::move(periods)});
  }
  return out;
}

std::string to_string(ClassicalStatus s) {
  switch (s) {
    case ClassicalStatus::found: return "found";
    case ClassicalStatus::not_found: return "not-found";
    case ClassicalStatus::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

double classical_em_expected_success(int n, std::uint64_t data, std::uint64_t time) {
  if (data < 2) return 0.0;
  const std::uint64_t block = std::bit_floor(std::min<std::uint64_t>(data, std::uint64_t{1} << n));
  const std::uint64_t steps = std::max<std::uint64_t>(1, time / 2);
  return std::min(1.0, static_cast<double>(steps * block) / std::ldexp(1.0, n));
}

ClassicalAttackResult classical_em_attack(OnlineOracle& oracle, const Permutation& p,
                                          std::uint64_t data, std::optional<std::uint64_t> time) {
  const int n = p.width();
  ClassicalAttackResult res;
  if (data > (std::uint64_t{1} << n)) throw std::invalid_argument("data budget exceeds codebook");
  if (data < 2) {
    res.status = ClassicalStatus::budget_exhausted;
    return res;
  }
  const std::uint64_t block = std::bit_floor(data);
  const std::uint64_t budget = time.value_or((std::uint64_t{1} << n) / block);

  std::vector<Word> ct(block);
  for (Word x = 0; x < block; ++x) ct[x] = oracle.classical(x);
  res.queries = block;

  // E(x) ^ E(x ^ 1) = P(z) ^ P(z ^ 1) with z = x ^ k1.
  std::unordered_multimap<Word, Word> diffs;
  for (Word x = 0; x < block; x += 2) diffs.emplace(ct[x] ^ ct[x + 1], x);

  auto verify = [&](Word k1) {
    const Word k2 = ct[0] ^ p(k1);
    ++res.p_evaluations;
    for (Word x : {Word{1}, Word(block - 1)}) {
      ++res.p_evaluations;
      if ((p(x ^ k1) ^ k2) != ct[x]) return false;
    }
    res.k1 = k1;
    res.k2 = k2;
    return true;
  };

  const std::uint64_t steps = std::max<std::uint64_t>(1, budget / 2);
  for (std::uint64_t j = 0; j < steps && j * block < (std::uint64_t{1} << n); ++j) {
    const Word y = static_cast<Word>(j * block);
    const Word v = p(y) ^ p(y ^ 1);
    res.p_evaluations += 2;
    auto [lo, hi] = diffs.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      for (Word k1 : {y ^ it->second, y ^ it->second ^ 1}) {
        if (verify(k1)) {
          res.status = ClassicalStatus::found;
          return res;
        }
      }
    }
  }
  res.status = ClassicalStatus::not_found;
  return res;
}

}  // namespace offsim
