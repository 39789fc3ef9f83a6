#pragma once

// Classical brute-force references: periods, collision statistics, the
// epsilon condition and a classical Even-Mansour attack.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "offsim/gf2.hpp"
#include "offsim/primitives.hpp"

namespace offsim {

struct QueryCounters {
  std::uint64_t classical_online = 0;
  std::uint64_t quantum_online = 0;
  std::uint64_t f_queries = 0;
  std::uint64_t grover_iterations = 0;

  QueryCounters& operator+=(const QueryCounters& o);
  bool operator==(const QueryCounters&) const = default;
  nlohmann::json to_json() const;
};

// A keyed function that can only be reached through counted queries.
class OnlineOracle {
 public:
  OnlineOracle(int in_width, int out_width, std::function<Word(Word)> f);

  int in_width() const { return in_width_; }
  int out_width() const { return out_width_; }

  Word classical(Word x);
  // One superposition query. Returns the truth table so that a simulator
  // can apply it as a unitary; the counter records exactly one query.
  TruthTable superposition_query();

  const QueryCounters& counters() const { return counters_; }
  QueryCounters& counters() { return counters_; }

 private:
  int in_width_;
  int out_width_;
  std::function<Word(Word)> f_;
  QueryCounters counters_;
};

// Tabulate the oracle over {0,1}^width (width <= in_width, low bits).
// Adds exactly 2^width classical queries.
TruthTable collect_codebook(OnlineOracle& oracle, int width);

// All s != 0 with f(x ^ s) = f(x) for every x, ascending.
std::vector<Word> find_periods(const TruthTable& f);

// Pr_x[h(x ^ t) = h(x)]. Throws std::invalid_argument for t = 0.
double collision_prob(const TruthTable& h, Word t);

// counts[t] = #{x : h(x ^ t) = h(x)} for every t (counts[0] = 2^n).
std::vector<std::uint64_t> collision_counts(const TruthTable& h);

// h_i = F(i, .) ^ g for every i.
IndexedFamily xor_with_family(const IndexedFamily& family, const TruthTable& g);

struct EpsilonReport {
  double eps_max = 0;
  Word worst_i = 0;
  Word worst_t = 0;
  std::optional<Word> periodic_index;
  std::optional<Word> period;

  nlohmann::json to_json() const;
};

// Max over i != i0 and t != 0 of collision_prob(f_i ^ g, t). When f_{i0} ^ g
// has exactly one period it is reported alongside.
EpsilonReport epsilon_max(const IndexedFamily& family, const TruthTable& g, Word i0);
// Same maximization over an already-combined family h_i.
EpsilonReport epsilon_max(const IndexedFamily& h, Word i0);

// Max over t not in {0, s} of collision_prob(h, t): the condition on the
// periodic function itself.
double periodic_condition(const TruthTable& h, Word s);

struct BranchPeriods {
  Word index = 0;
  std::vector<Word> periods;
};

// Branches of h that have at least one period.
std::vector<BranchPeriods> periodic_branches(const IndexedFamily& h);

enum class ClassicalStatus { found, not_found, budget_exhausted };
std::string to_string(ClassicalStatus s);

struct ClassicalAttackResult {
  ClassicalStatus status = ClassicalStatus::not_found;
  Word k1 = 0;
  Word k2 = 0;
  std::uint64_t queries = 0;
  std::uint64_t p_evaluations = 0;
};

// Differential collision attack on Even-Mansour with D chosen plaintexts and
// T offline evaluations of P (default 2^n / D). Expected success is
// classical_em_expected_success(n, D, T).
ClassicalAttackResult classical_em_attack(OnlineOracle& oracle, const Permutation& p,
                                          std::uint64_t data,
                                          std::optional<std::uint64_t> time = std::nullopt);
double classical_em_expected_success(int n, std::uint64_t data, std::uint64_t time);

}  // namespace offsim
