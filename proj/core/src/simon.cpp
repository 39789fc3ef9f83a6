#include "offsim/simon.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "offsim/analysis.hpp"

namespace offsim::simon {

double SimonSampleDistribution::prob_orthogonal(Word t) const {
  double p = 0;
  for (std::size_t u = 0; u < weights.size(); ++u) {
    if (dot(static_cast<Word>(u), t) == 0) p += weights[u];
  }
  return p;
}

SimonSampleDistribution distribution(const TruthTable& h) {
  if (!h.complete()) throw WidthError("incomplete truth table");
  if (h.in_width > kMaxSimonWidth) throw WidthError("Simon distribution limited to n <= 20");
  const auto counts = collision_counts(h);
  std::vector<double> w(counts.begin(), counts.end());
  fwht(w);
  const double scale = std::ldexp(1.0, -2 * h.in_width);
  for (auto& v : w) v *= scale;
  return {h.in_width, std::move(w)};
}

Sampler::Sampler(const TruthTable& h) : h_(h), n_(h.in_width) {
  if (!h.complete()) throw WidthError("incomplete truth table");
  if (n_ > kMaxSimonWidth) throw WidthError("Simon sampler limited to n <= 20");
  order_.resize(h.size());
  std::iota(order_.begin(), order_.end(), Word{0});
  std::stable_sort(order_.begin(), order_.end(), [&](Word a, Word b) { return h(a) < h(b); });
  sorted_.resize(h.size());
  for (std::size_t k = 0; k < order_.size(); ++k) sorted_[k] = h(order_[k]);
}

std::span<const Word> Sampler::members(Word value) const {
  const auto [lo, hi] = std::equal_range(sorted_.begin(), sorted_.end(), value);
  return {order_.data() + (lo - sorted_.begin()), static_cast<std::size_t>(hi - lo)};
}

const Sampler::ClassLaw& Sampler::law_for(Word value) {
  if (auto it = laws_.find(value); it != laws_.end()) return it->second;
  const auto class_members = members(value);
  const Word x0 = class_members.front();
  Gf2Basis span(n_);
  for (Word x : class_members) span.insert(x ^ x0);

  ClassLaw law;
  law.basis = span.rows();
  const int r = span.dim();
  std::vector<int> pivots;
  for (Word row : law.basis) pivots.push_back(std::bit_width(row) - 1);

  // Coordinates of each difference in the reduced basis are its pivot bits.
  std::vector<double> hist(std::size_t{1} << r, 0.0);
  for (Word x : class_members) {
    const Word d = x ^ x0;
    Word coord = 0;
    for (int j = 0; j < r; ++j) coord |= ((d >> pivots[j]) & 1U) << j;
    hist[coord] += 1.0;
  }
  fwht(hist);
  const double norm = static_cast<double>(class_members.size()) * std::ldexp(1.0, r);
  law.cdf.resize(hist.size());
  double acc = 0;
  for (std::size_t z = 0; z < hist.size(); ++z) {
    acc += hist[z] * hist[z] / norm;
    law.cdf[z] = acc;
  }
  law.annihilator = solve_affine(law.basis, 0, n_)->kernel;
  return laws_.emplace(value, std::move(law)).first->second;
}

Word Sampler::draw(Rng& rng) {
  const Word x = static_cast<Word>(random_below(rng, std::size_t{1} << n_));
  const Word value = h_(x);
  if (members(value).size() == 1) return random_word(rng, n_);

  const auto& law = law_for(value);
  const double p = random_unit(rng) * law.cdf.back();
  const auto pos = std::upper_bound(law.cdf.begin(), law.cdf.end(), p) - law.cdf.begin();
  const Word z = static_cast<Word>(std::min<std::ptrdiff_t>(pos, std::ssize(law.cdf) - 1));
  Word u = solve_affine(law.basis, z, n_)->particular;
  for (Word k : law.annihilator) {
    if (rng() & 1U) u ^= k;
  }
  return u;
}

std::vector<Word> sample(const TruthTable& h, std::size_t count, Rng& rng) {
  Sampler s(h);
  std::vector<Word> out(count);
  for (auto& u : out) u = s.draw(rng);
  return out;
}

RunResult classify(std::span<const Word> samples, int n) {
  Gf2Basis basis(n);
  for (Word u : samples) basis.insert(u);
  RunResult res;
  res.rank = basis.dim();
  if (res.rank == n) {
    res.verdict = Verdict::no_period;
  } else if (res.rank == n - 1) {
    res.verdict = Verdict::period;
    res.period = basis.orthogonal_complement().front();
  } else {
    res.verdict = Verdict::ambiguous;
  }
  return res;
}

RunResult run(Sampler& sampler, int c, Rng& rng) {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  const int n = sampler.width();
  std::vector<Word> us(static_cast<std::size_t>(c) * n);
  for (auto& u : us) u = sampler.draw(rng);
  return classify(us, n);
}

RunResult run(const TruthTable& h, int c, Rng& rng) {
  Sampler s(h);
  return run(s, c, rng);
}

double prop1_failure_bound(int n, int c) { return std::ldexp(std::pow(0.75, c * n), n); }

double p_bad_bound(int n, int c, double eps) {
  return std::ldexp(std::pow((1.0 + eps) / 2.0, c * n), n);
}

double p_bad_union_bound(const TruthTable& h, int c) {
  const auto counts = collision_counts(h);
  const double size = static_cast<double>(counts.size());
  double sum = 0;
  for (std::size_t t = 1; t < counts.size(); ++t) {
    sum += std::pow((1.0 + static_cast<double>(counts[t]) / size) / 2.0, c * h.in_width);
  }
  return sum;
}

PBadEstimate p_bad_estimate(const TruthTable& h, int c, std::uint64_t trials, Rng& rng) {
  if (trials == 0) throw std::invalid_argument("p_bad_estimate needs at least one trial");
  const auto counts = collision_counts(h);
  const std::size_t size = counts.size();
  std::uint64_t worst = 0;
  for (std::size_t t = 1; t < size; ++t) {
    if (counts[t] == size) throw std::invalid_argument("p_bad_estimate requires an aperiodic function");
    worst = std::max(worst, counts[t]);
  }
  const int n = h.in_width;
  PBadEstimate est;
  est.eps = static_cast<double>(worst) / static_cast<double>(size);
  est.bound = p_bad_bound(n, c, est.eps);
  est.union_bound = p_bad_union_bound(h, c);
  est.trials = trials;

  Sampler sampler(h);
  const int draws = c * n;
  for (std::uint64_t k = 0; k < trials; ++k) {
    Gf2Basis basis(n);
    for (int j = 0; j < draws && basis.dim() < n; ++j) basis.insert(sampler.draw(rng));
    if (basis.dim() < n) ++est.failures;
  }
  est.estimate = static_cast<double>(est.failures) / static_cast<double>(trials);
  est.half_width = 1.96 * std::sqrt(est.estimate * (1 - est.estimate) / static_cast<double>(trials));
  return est;
}

}  // namespace offsim::simon
