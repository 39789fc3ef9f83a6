#pragma once

// Simon's algorithm: exact measurement law, a sampler for it, and the
// end-to-end period finder.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "offsim/gf2.hpp"
#include "offsim/rng.hpp"

namespace offsim::simon {

inline constexpr int kMaxSimonWidth = 20;

struct SimonSampleDistribution {
  int n = 0;
  std::vector<double> weights;

  double prob_orthogonal(Word t) const;
};

// weight(u) = 4^-n * sum_a |sum_{h(x)=a} (-1)^(u.x)|^2.
SimonSampleDistribution distribution(const TruthTable& h);

// Draws u by first drawing the output class (uniform x, then a = h(x)) and
// then u from the transform of that class's indicator. A class x0 ^ D with
// span(D) of dimension r only needs a 2^r-point transform; u is uniform on
// the matching coset of the annihilator. Per-class tables are cached.
class Sampler {
 public:
  explicit Sampler(const TruthTable& h);

  int width() const { return n_; }
  Word draw(Rng& rng);

 private:
  struct ClassLaw {
    std::vector<Word> basis;       // independent rows b_1..b_r
    std::vector<double> cdf;       // over z in {0,1}^r
    std::vector<Word> annihilator; // kernel of u -> (b_j . u)
  };
  std::span<const Word> members(Word value) const;
  const ClassLaw& law_for(Word value);

  TruthTable h_;
  int n_;
  std::vector<Word> order_;   // inputs sorted by output value
  std::vector<Word> sorted_;  // h_ over order_
  std::unordered_map<Word, ClassLaw> laws_;
};

std::vector<Word> sample(const TruthTable& h, std::size_t count, Rng& rng);

enum class Verdict { period, no_period, ambiguous };

struct RunResult {
  Verdict verdict = Verdict::ambiguous;
  Word period = 0;
  int rank = 0;
};

RunResult classify(std::span<const Word> samples, int n);
RunResult run(const TruthTable& h, int c, Rng& rng);
RunResult run(Sampler& sampler, int c, Rng& rng);

// 2^n (3/4)^(cn).
double prop1_failure_bound(int n, int c);
// 2^n ((1 + eps) / 2)^(cn).
double p_bad_bound(int n, int c, double eps);
// sum_{t != 0} ((1 + Pr[collision at t]) / 2)^(cn).
double p_bad_union_bound(const TruthTable& h, int c);

struct PBadEstimate {
  double estimate = 0;
  double half_width = 0;  // 95% normal approximation
  double bound = 0;
  double union_bound = 0;
  double eps = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
};

// Monte Carlo Pr[rank of cn samples < n] for an aperiodic h. Throws
// std::invalid_argument when h has a period.
PBadEstimate p_bad_estimate(const TruthTable& h, int c, std::uint64_t trials, Rng& rng);

}  // namespace offsim::simon
