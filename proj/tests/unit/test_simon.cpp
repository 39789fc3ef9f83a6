#include <doctest.h>

#include <cmath>

#include "offsim/simon.hpp"
#include "oracles.hpp"

using namespace offsim;

TEST_SUITE("simon") {
  TEST_CASE("distribution equals the circuit law") {
    Rng rng = make_rng(31);
    for (int trial = 0; trial < 12; ++trial) {
      const int n = 1 + trial % 6;
      const auto h = trial % 3 == 0 ? oracle::periodic_table(n, 3, 1, rng) : oracle::random_table(n, 3, rng);
      const auto d = simon::distribution(h);
      const auto law = oracle::simon_law(h);
      double total = 0;
      for (Word u = 0; u < h.size(); ++u) {
        CHECK(d.weights[u] == doctest::Approx(law[u]).epsilon(1e-12));
        total += d.weights[u];
      }
      CHECK(total == doctest::Approx(1.0));
    }
  }

  TEST_CASE("support of injective and periodic functions") {
    Rng rng = make_rng(32);
    const auto inj = oracle::injective_table(5, rng);
    for (double w : simon::distribution(inj).weights) CHECK(w == doctest::Approx(1.0 / 32));

    const Word s = 0b10110;
    const auto per = oracle::periodic_table(5, 5, s, rng);
    const auto d = simon::distribution(per);
    for (Word u = 0; u < 32; ++u) {
      if (dot(u, s)) CHECK(d.weights[u] == 0.0);
    }
    CHECK(d.prob_orthogonal(s) == doctest::Approx(1.0));
  }

  TEST_CASE("sampler follows the law") {
    Rng rng = make_rng(33);
    const auto h = oracle::random_table(4, 2, rng);
    const auto law = oracle::simon_law(h);
    const std::size_t draws = 200000;
    std::vector<double> counts(16, 0.0);
    for (Word u : simon::sample(h, draws, rng)) counts[u] += 1;
    double chi = 0;
    for (Word u = 0; u < 16; ++u) {
      const double e = law[u] * draws;
      if (e > 0) chi += (counts[u] - e) * (counts[u] - e) / e;
      else CHECK(counts[u] == 0.0);
    }
    CHECK(chi < 44.3);  // 99.99% point with 15 dof
  }

  TEST_CASE("periodic samples stay orthogonal at the maximum width") {
    Rng rng = make_rng(34);
    const int n = simon::kMaxSimonWidth;
    const Word s = 0xabcde;
    TruthTable h(n, n);
    for (Word x = 0; x < h.size(); ++x) h.values[x] = std::min(x, x ^ s);
    simon::Sampler sampler(h);
    for (int k = 0; k < 200; ++k) CHECK(dot(sampler.draw(rng), s) == 0);
    const auto r = simon::run(sampler, 3, rng);
    CHECK(r.verdict == simon::Verdict::period);
    CHECK(r.period == s);
  }

  TEST_CASE("classify") {
    CHECK(simon::classify(std::vector<Word>{1, 2, 4}, 3).verdict == simon::Verdict::no_period);
    const auto r = simon::classify(std::vector<Word>{3, 5, 6}, 3);
    CHECK(r.verdict == simon::Verdict::period);
    CHECK(r.period == 7);
    CHECK(r.rank == 2);
    CHECK(simon::classify(std::vector<Word>{1, 1, 0}, 3).verdict == simon::Verdict::ambiguous);
  }

  TEST_CASE("constant h never yields a period") {
    Rng rng = make_rng(35);
    TruthTable h(4, 1);
    const auto r = simon::run(h, 3, rng);
    CHECK(r.verdict == simon::Verdict::ambiguous);
    CHECK(r.rank == 0);
  }

  TEST_CASE("bounds") {
    CHECK(simon::prop1_failure_bound(4, 2) == doctest::Approx(16 * std::pow(0.75, 8)));
    CHECK(simon::p_bad_bound(3, 2, 0.5) == doctest::Approx(8 * std::pow(0.75, 6)));
    Rng rng = make_rng(36);
    const auto h = oracle::injective_table(3, rng);
    // Injective: every t has collision 0, so the union bound is 7 * 2^(-cn).
    CHECK(simon::p_bad_union_bound(h, 2) == doctest::Approx(7 * std::pow(0.5, 6)));
  }

  TEST_CASE("p_bad at n = 1 is (1/2)^c") {
    Rng rng = make_rng(37);
    const TruthTable h(1, 1, {0, 1});
    for (int c : {1, 2, 4}) {
      const auto e = simon::p_bad_estimate(h, c, 40000, rng);
      const double p = std::pow(0.5, c);
      CHECK(std::abs(e.estimate - p) < 4 * std::sqrt(p * (1 - p) / 40000));
      CHECK(e.trials == 40000);
    }
    const TruthTable per(1, 1, {0, 0});
    CHECK_THROWS_AS(simon::p_bad_estimate(per, 2, 10, rng), std::invalid_argument);
  }

  TEST_CASE("large c drives failure to zero") {
    Rng rng = make_rng(38);
    const auto h = oracle::random_table(6, 6, rng);
    if (oracle::periods(h).empty()) {
      const auto e = simon::p_bad_estimate(h, 12, 2000, rng);
      CHECK(e.failures == 0);
    }
  }
}
