#pragma once

// Key-recovery attacks that embed each target into the offline-Simon search,
// seeded instance builders with degeneracy screens, and a seed-driven runner.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "offsim/analysis.hpp"
#include "offsim/offline_simon.hpp"
#include "offsim/primitives.hpp"
#include "offsim/rng.hpp"

namespace offsim {

using KeyList = std::vector<std::pair<std::string, Word>>;

struct AttackOptions {
  int c = 0;  // 0: default_c(index width, Simon width)
  Backend backend = Backend::sampled;
  SearchOptions search;
};

struct AttackReport {
  std::string target;
  KeyList recovered;
  KeyList planted;
  bool verified = false;    // candidate keys reproduce the target oracle
  bool keys_match = false;  // candidate keys equal the planted ones
  QueryCounters counters;
  std::uint64_t data = 0;             // D: classical online queries
  std::uint64_t time_iterations = 0;  // Grover iterations
  std::uint64_t time_f_evals = 0;     // T in F-evaluations
  int qubits = 0;                     // Q for an exact circuit of this shape
  std::uint64_t memory_words = 0;     // M: stored classical words
  bool adaptive = false;
  OfflineReport search;
  std::optional<Word> search_index;
  std::optional<Word> period;
  std::vector<std::string> flags;
  std::uint64_t seed = 0;
  int instance_attempts = 1;
  std::optional<bool> agrees_with_classical;
  std::optional<double> wall_seconds;

  bool success() const { return verified; }
  nlohmann::json to_json() const;
};

// A Problem 3 embedding: online g over {0,1}^u and offline F(i, x).
struct EmbeddedProblem {
  IndexedFamily family;
  TruthTable g;  // ground truth for screening only; attacks query g through an oracle
  Word planted_index = 0;
  Word planted_period = 0;
};

// Degenerate inputs rejected by the builders.
class DegenerateInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// True iff exactly one branch of F ^ g is periodic, it is the planted index,
// and its only period is the planted one.
bool passes_screen(const EmbeddedProblem& p);
bool passes_screen(const IndexedFamily& h, Word index, Word period);
// Throws DegenerateInstance for a zero planted period or a failed screen.
void require_nondegenerate(const EmbeddedProblem& p);

EmbeddedProblem em_q1_problem(const EvenMansourInstance& inst, int u);
EmbeddedProblem fx_q2_problem(const FxInstance& inst);
EmbeddedProblem fx_q1_problem(const FxInstance& inst, int u);
EmbeddedProblem related_key_problem(const RelatedKeyOracle& oracle, Word msg);
EmbeddedProblem beetle_problem(const BeetleToy& inst, int nonce_bits, Word nonce_start);
// Per-branch functions h_i on {0,1} x {0,1}^n, b in the high bit.
IndexedFamily slide_branches(const IterFxInstance& inst, const TruthTable& codebook);
// Screen for the slide embedding on the instance's own codebook.
bool screen_slide(const IterFxInstance& inst);

AttackReport attack_em_q1(const EvenMansourInstance& inst, int u, const AttackOptions& opt, Rng& rng);
AttackReport attack_fx_q2(const FxInstance& inst, const AttackOptions& opt, Rng& rng);
AttackReport attack_fx_q1(const FxInstance& inst, int u, const AttackOptions& opt, Rng& rng);
AttackReport attack_chaskey(const ChaskeyToy& inst, int u, const AttackOptions& opt, Rng& rng,
                            Word m1 = 0);
AttackReport attack_beetle(const BeetleToy& inst, int nonce_bits, Word nonce_start,
                           const AttackOptions& opt, Rng& rng);
AttackReport attack_related_key(const RelatedKeyOracle& oracle, const AttackOptions& opt, Rng& rng,
                                Word msg = 0);
AttackReport attack_slide_ifx(const IterFxInstance& inst, const AttackOptions& opt, Rng& rng);

// Keys consistent with the oracle, found by exhaustive classical search.
std::vector<Word> exhaustive_related_key(const RelatedKeyOracle& oracle);
std::vector<std::pair<Word, Word>> exhaustive_slide(const IterFxInstance& inst);

// Seeded instance builders. Each retries derived seeds until the planted
// embedding passes the degeneracy screen; `attempts` reports how many.
struct BuiltEm {
  EvenMansourInstance inst;
  int attempts = 1;
};
struct BuiltFx {
  FxInstance inst;
  int attempts = 1;
};
struct BuiltChaskey {
  ChaskeyToy inst;
  int attempts = 1;
};
struct BuiltBeetle {
  BeetleToy inst;
  Word nonce_start = 0;
  int attempts = 1;
};
struct BuiltRelatedKey {
  RelatedKeyOracle oracle;
  Word msg = 0;
  int attempts = 1;
};
struct BuiltIfx {
  IterFxInstance inst;
  int attempts = 1;
};

BuiltEm make_em_instance(int n, int u, std::uint64_t seed);
BuiltFx make_fx_q2_instance(int n, int m, std::uint64_t seed);
BuiltFx make_fx_q1_instance(int n, int m, int u, std::uint64_t seed);
BuiltChaskey make_chaskey_instance(int n, int u, std::uint64_t seed);
BuiltBeetle make_beetle_instance(int rate, int capacity, int nonce_bits, std::uint64_t seed);
BuiltRelatedKey make_related_key_instance(int n, std::uint64_t seed);
BuiltIfx make_ifx_instance(int n, int key_bits, int rounds, std::uint64_t seed);

struct AttackParams {
  std::string kind;  // em-q1 fx-q2 fx-q1 chaskey beetle related-key slide-ifx
  int n = 0;
  int m = 0;
  int u = 0;
  int c = 0;
  int rounds = 2;
  int rate = 6;
  int capacity = 4;
  Backend backend = Backend::sampled;
};

std::vector<std::string> attack_kinds();
// Rejects unknown kinds and sizes outside desk-scale limits before any work.
void validate(const AttackParams& p);
AttackReport run_attack(const AttackParams& p, std::uint64_t seed);

}  // namespace offsim
