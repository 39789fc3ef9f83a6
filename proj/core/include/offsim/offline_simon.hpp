#pragma once

// Offline Simon: the g-database, the periodicity test, the two search
// algorithms (superposition and classical acquisition) and SimQ1, each on
// an exact-circuit, structured or sampled backend.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "offsim/analysis.hpp"
#include "offsim/gf2.hpp"
#include "offsim/qaa.hpp"
#include "offsim/rng.hpp"

namespace offsim {

enum class Backend { exact, structured, sampled };
std::string to_string(Backend b);
Backend backend_from_string(std::string_view s);

enum class Acquisition { q2_superposition, q1_codebook };

struct GDatabase {
  TruthTable g;
  int copies = 0;
  Acquisition acquisition = Acquisition::q2_superposition;

  int width() const { return g.in_width; }
};

// cn superposition queries to g.
GDatabase acquire_q2(OnlineOracle& g, int c);
// The full classical codebook of g (2^n classical queries).
GDatabase acquire_q1(OnlineOracle& g, int c);
// Resume from a codebook collected earlier.
GDatabase database_from_codebook(TruthTable codebook, int c);

// Sufficient c for an m-bit search over n-bit Simon instances:
// (m + 3 + 2 log2 pi) / (n log2(4/3)) and the rounded m / (n log2(4/3)).
double c_precise(int m, int n);
double c_rounded(int m, int n);
// max(1, ceil(c_precise(m, n))).
int default_c(int m, int n);

struct ErrorBudget {
  double eps = 0;
  double delta_norm_bound = 0;  // 2^((n+1)/2) ((1+eps)/2)^(cn/2)
  double per_iteration = 0;     // 2 * delta_norm_bound
  double success_lower = 0;
  int r = 0;

  double accumulated(int j) const { return 4.0 * j * delta_norm_bound; }
};

double delta_norm_bound(int n, int c, double eps);
ErrorBudget error_budget(int n, int m, int c, double eps);

struct BranchRecord {
  Word index = 0;
  bool periodic = false;
  double p_bad = 0;
  double half_width = 0;
  double union_bound = 0;
};

struct OfflineReport {
  Backend backend = Backend::sampled;
  int n = 0;
  int m = 0;
  int l = 0;
  int c = 0;
  int u = 0;
  QueryCounters counters;
  double eps = 0;
  double delta_bound = 0;
  double ideal_success = 0;
  double success_lower = 0;
  std::optional<Word> recovered;
  std::optional<bool> correct;
  bool condition_violated = false;
  bool c_too_small = false;
  std::vector<std::string> flags;
  std::vector<BranchRecord> branches;  // structured backend only

  nlohmann::json to_json() const;
};

struct SearchOptions {
  std::size_t shots = 1;
  // Monte Carlo trials per aperiodic branch for the structured p_bad table.
  std::uint64_t p_bad_trials = 0;
};

struct OfflineResult {
  Word measured = 0;
  std::vector<Word> shots;
  // Exact or ideal law of the measured index when the backend provides one.
  std::vector<double> index_distribution;
  OfflineReport report;
};

// Offline phase for a Problem 3 instance F against a database of g. Adds
// 2cn F-queries per Grover iteration; never queries g.
OfflineResult offline_search(const IndexedFamily& family, const GDatabase& db, int c, Backend backend,
                             Rng& rng, const SearchOptions& options = {});

// Offline phase over arbitrary per-branch functions h_i (sampled and
// structured backends only).
OfflineResult offline_search_branches(const IndexedFamily& h, int c, Backend backend, Rng& rng,
                                      const SearchOptions& options = {});

OfflineResult alg_poly_q2(const IndexedFamily& family, OnlineOracle& g, int c, Backend backend,
                          Rng& rng, const SearchOptions& options = {});
OfflineResult alg_exp_q1(const IndexedFamily& family, OnlineOracle& g, int c, Backend backend,
                         Rng& rng, const SearchOptions& options = {});

struct TestOutcome {
  double flip_probability = 0;     // Pr[b changed]
  double restoration_distance = 0; // || state after - state before ||
  int qubits = 0;
};

// Exact-circuit test of branch i with b in a basis state.
TestOutcome exact_test(const IndexedFamily& family, const GDatabase& db, Word i, int b);

// Sampled test: cn Simon samples of f_i ^ g, outcome b ^ (rank < n).
int sampled_test(const TruthTable& h, int c, int b, Rng& rng);

// Qubits of the exact search circuit: m + cn(n + l) + 1.
int exact_qubits(int m, int n, int l, int c);

struct SimQ1Result {
  std::optional<Word> period;
  int rank = 0;
  QueryCounters counters;
};

// Collects g's codebook, then cn Simon samples of f ^ g; the period when the
// rank is exactly n - 1, nothing otherwise.
SimQ1Result sim_q1(const TruthTable& f, OnlineOracle& g, int c, Rng& rng);
SimQ1Result recover_period(const TruthTable& f, const TruthTable& codebook, int c, Rng& rng);

}  // namespace offsim
