#include <doctest.h>

#include "offsim/analysis.hpp"
#include "oracles.hpp"

using namespace offsim;

TEST_SUITE("analysis") {
  TEST_CASE("find_periods agrees with brute force") {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 1 + trial % 6;
      const Word s = 1 + random_below(rng, (1u << n) - 1);
      const auto h = trial % 2 ? oracle::periodic_table(n, 2, s, rng) : oracle::random_table(n, 2, rng);
      CHECK(find_periods(h) == oracle::periods(h));
    }
    TruthTable constant(3, 2);
    CHECK(find_periods(constant).size() == 7);
  }

  TEST_CASE("collision_prob agrees with the double loop") {
    Rng rng = make_rng(12);
    const auto h = oracle::random_table(5, 2, rng);
    const auto counts = collision_counts(h);
    CHECK(counts[0] == 32);
    for (Word t = 1; t < 32; ++t) {
      CHECK(collision_prob(h, t) == doctest::Approx(oracle::collision(h, t)));
      CHECK(static_cast<double>(counts[t]) / 32 == doctest::Approx(oracle::collision(h, t)));
    }
    CHECK_THROWS_AS(collision_prob(h, 0), std::invalid_argument);
  }

  TEST_CASE("epsilon_max on constructed families") {
    Rng rng = make_rng(13);
    const int m = 2, n = 4;
    IndexedFamily fam(m, n, n);
    TruthTable g(n, n);
    // Branch 2 is h = f ^ g with period 5; the others are injective.
    const auto periodic = oracle::periodic_table(n, n, 5, rng);
    for (Word i = 0; i < 4; ++i) {
      const auto inj = oracle::injective_table(n, rng);
      for (Word x = 0; x < 16; ++x) fam.at(i, x) = i == 2 ? periodic(x) : inj(x);
    }
    const auto rep = epsilon_max(fam, g, 2);
    CHECK(rep.eps_max == 0.0);
    REQUIRE(rep.periodic_index.has_value());
    CHECK(*rep.periodic_index == 2);
    CHECK(rep.period == Word{5});

    // A constant branch drives epsilon to 1.
    for (Word x = 0; x < 16; ++x) fam.at(1, x) = 0;
    const auto bad = epsilon_max(fam, g, 2);
    CHECK(bad.eps_max == 1.0);
    CHECK(bad.worst_i == 1);

    // Brute-force maximum on a random family.
    IndexedFamily rnd(m, n, 2);
    for (auto& v : rnd.values) v = random_word(rng, 2);
    double expect = 0;
    for (Word i = 1; i < 4; ++i) {
      for (Word t = 1; t < 16; ++t) expect = std::max(expect, oracle::collision(rnd.branch(i), t));
    }
    CHECK(epsilon_max(rnd, 0).eps_max == doctest::Approx(expect));
  }

  TEST_CASE("periodic_condition excludes the period") {
    Rng rng = make_rng(14);
    const auto h = oracle::periodic_table(4, 4, 3, rng);
    double expect = 0;
    for (Word t = 1; t < 16; ++t) {
      if (t != 3) expect = std::max(expect, oracle::collision(h, t));
    }
    CHECK(periodic_condition(h, 3) == doctest::Approx(expect));
  }

  TEST_CASE("periodic_branches") {
    IndexedFamily fam(1, 2, 2);
    fam.values = {0, 1, 2, 3, 0, 0, 1, 1};
    const auto b = periodic_branches(fam);
    REQUIRE(b.size() == 1);
    CHECK(b[0].index == 1);
    CHECK(b[0].periods == std::vector<Word>{1});
  }

  TEST_CASE("codebook collection counts queries") {
    OnlineOracle o(6, 6, [](Word x) { return x ^ 9; });
    const auto cb = collect_codebook(o, 4);
    CHECK(cb.size() == 16);
    CHECK(cb(3) == (3 ^ 9));
    CHECK(o.counters().classical_online == 16);
    o.superposition_query();
    CHECK(o.counters().quantum_online == 1);
  }

  TEST_CASE("classical Even-Mansour attack") {
    const int n = 10;
    const auto p = random_permutation(n, 21);
    const EvenMansourInstance inst{p, 0x155, 0x2aa};
    auto make_oracle = [&] { return OnlineOracle(n, n, [&](Word x) { return em_encrypt(inst, x); }); };

    SUBCASE("full codebook always succeeds") {
      auto o = make_oracle();
      const auto r = classical_em_attack(o, p, 1u << n);
      CHECK(r.status == ClassicalStatus::found);
      CHECK(r.k1 == inst.k1);
      CHECK(r.k2 == inst.k2);
      CHECK(classical_em_expected_success(n, 1u << n, 2) == 1.0);
    }
    SUBCASE("no data") {
      auto o = make_oracle();
      CHECK(classical_em_attack(o, p, 0).status != ClassicalStatus::found);
      CHECK(classical_em_expected_success(n, 0, 1024) == 0.0);
    }
    SUBCASE("Monte Carlo rate matches the expected success") {
      const std::uint64_t d = 32, t = 32;
      int found = 0;
      const int runs = 400;
      for (int k = 0; k < runs; ++k) {
        Rng rng = make_rng(100 + k);
        const EvenMansourInstance ik{p, random_word(rng, n), random_word(rng, n)};
        OnlineOracle o(n, n, [&](Word x) { return em_encrypt(ik, x); });
        const auto r = classical_em_attack(o, p, d, t);
        if (r.status == ClassicalStatus::found) {
          CHECK(r.k1 == ik.k1);
          ++found;
        }
        CHECK(o.counters().classical_online <= d);
      }
      const double e = classical_em_expected_success(n, d, t);
      CHECK(e == doctest::Approx(0.5));
      const double sigma = std::sqrt(e * (1 - e) / runs);
      CHECK(std::abs(found / double(runs) - e) < 4 * sigma);
    }
  }
}
