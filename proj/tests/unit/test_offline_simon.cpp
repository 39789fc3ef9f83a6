#include <doctest.h>

#include <cmath>
#include <numbers>

#include "offsim/offline_simon.hpp"
#include "offsim/simon.hpp"
#include "oracles.hpp"

using namespace offsim;

namespace {

// F(i, x) = P_i(x) ^ g(x) with branch i0 periodic in s after xoring g.
struct Tiny {
  IndexedFamily family;
  TruthTable g;
};

Tiny tiny(int m, int n, Word i0, Word s, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  Tiny t{IndexedFamily(m, n, n), oracle::random_table(n, n, rng)};
  for (Word i = 0; i < t.family.index_count(); ++i) {
    const auto h = i == i0 ? oracle::periodic_table(n, n, s, rng) : oracle::injective_table(n, rng);
    for (Word x = 0; x < h.size(); ++x) t.family.at(i, x) = h(x) ^ t.g(x);
  }
  return t;
}

OnlineOracle oracle_for(const TruthTable& g) {
  return OnlineOracle(g.in_width, g.out_width, [g](Word x) { return g(x); });
}

}  // namespace

TEST_SUITE("offline-simon") {
  TEST_CASE("Q2 counters") {
    const auto t = tiny(4, 6, 9, 0b101101, 51);
    auto g = oracle_for(t.g);
    Rng rng = make_rng(1);
    const auto r = alg_poly_q2(t.family, g, 3, Backend::sampled, rng);
    CHECK(r.report.counters.quantum_online == 18);
    CHECK(r.report.counters.classical_online == 0);
    CHECK(r.report.counters.grover_iterations == 3);
    CHECK(r.report.counters.f_queries == 108);
  }

  TEST_CASE("Q1 acquisition is classical") {
    const auto t = tiny(2, 4, 1, 0b0110, 52);
    auto g = oracle_for(t.g);
    Rng rng = make_rng(2);
    const auto r = alg_exp_q1(t.family, g, 3, Backend::sampled, rng);
    CHECK(r.report.counters.classical_online == 16);
    CHECK(r.report.counters.quantum_online == 0);
  }

  TEST_CASE("exact test flips only aperiodic branches") {
    const auto t = tiny(2, 2, 2, 3, 53);
    auto g = oracle_for(t.g);
    const auto db = acquire_q2(g, 2);
    const auto per = exact_test(t.family, db, 2, 0);
    // A periodic branch never reaches full rank, so the test always flips.
    CHECK(per.flip_probability == doctest::Approx(1.0));
    // The flip itself moves the state by sqrt(2); nothing else is left behind.
    CHECK(per.restoration_distance == doctest::Approx(std::sqrt(2.0)));
    CHECK(per.qubits <= exact_qubits(2, 2, 2, 2));
    for (Word i : {0u, 1u, 3u}) {
      const auto out = exact_test(t.family, db, i, 0);
      CHECK(out.flip_probability < 1.0);
      CHECK(out.restoration_distance <= delta_norm_bound(2, 2, 0.0) + 1e-12);
    }
    CHECK(exact_qubits(2, 2, 2, 2) == 19);
  }

  TEST_CASE("sampled test on periodic and injective functions") {
    Rng rng = make_rng(54);
    const auto per = oracle::periodic_table(4, 4, 3, rng);
    for (int k = 0; k < 50; ++k) CHECK(sampled_test(per, 3, 1, rng) == 0);
    const auto inj = oracle::injective_table(4, rng);
    int flips = 0;
    for (int k = 0; k < 2000; ++k) flips += sampled_test(inj, 3, 0, rng);
    // 12 uniform samples span all 4 dimensions with probability about 0.99.
    CHECK(flips < 100);
  }

  TEST_CASE("delta bound is the square root of the failure bound") {
    for (int n : {3, 6, 10}) {
      for (int c : {1, 2, 4}) {
        const double d = delta_norm_bound(n, c, 0.2);
        CHECK(d * d == doctest::Approx(2 * simon::p_bad_bound(n, c, 0.2)));
      }
    }
  }

  TEST_CASE("c formulas") {
    const double k = std::log2(4.0 / 3.0);
    CHECK(c_rounded(64, 64) == doctest::Approx(1 / k));
    CHECK(c_precise(10, 5) == doctest::Approx((13 + 2 * std::log2(std::numbers::pi)) / (5 * k)));
    CHECK(default_c(10, 5) == static_cast<int>(std::ceil(c_precise(10, 5))));
    CHECK(default_c(0, 20) >= 1);
  }

  TEST_CASE("flags") {
    Rng rng = make_rng(55);
    auto t = tiny(2, 4, 1, 0b0011, 56);
    // Make branch 3 constant after the xor with g.
    for (Word x = 0; x < 16; ++x) t.family.at(3, x) = t.g(x);
    auto g = oracle_for(t.g);
    const auto r = alg_poly_q2(t.family, g, 1, Backend::sampled, rng);
    CHECK(r.report.condition_violated);
    CHECK(r.report.c_too_small);
    const auto& f = r.report.flags;
    CHECK(std::find(f.begin(), f.end(), "condition-violated") != f.end());
    CHECK(std::find(f.begin(), f.end(), "multiple-periodic-indices") != f.end());
  }

  TEST_CASE("sim_q1 with f equal to g") {
    Rng rng = make_rng(57);
    const auto g = oracle::random_table(4, 4, rng);
    auto o = oracle_for(g);
    const auto r = sim_q1(g, o, 3, rng);
    // f ^ g is constant: every sample is 0, so no period is returned.
    CHECK(!r.period.has_value());
    CHECK(r.rank == 0);
    CHECK(r.counters.classical_online == 16);
  }

  TEST_CASE("codebook round trip resumes the search") {
    const Word s = 0b1001;
    const auto t = tiny(3, 4, 5, s, 58);
    auto g = oracle_for(t.g);
    const auto cb = collect_codebook(g, 4);
    const auto db = database_from_codebook(load_codebook(save_codebook(cb)), 3);
    int hits = 0;
    for (int k = 0; k < 20; ++k) {
      Rng rng = make_rng(200 + k);
      const auto r = offline_search(t.family, db, 3, Backend::structured, rng);
      hits += r.measured == 5;
      if (r.measured == 5) CHECK(recover_period(t.family.branch(5), cb, 3, rng).period.value_or(0) == s);
    }
    CHECK(hits >= 15);
  }

  TEST_CASE("backend names") {
    CHECK(backend_from_string("exact") == Backend::exact);
    CHECK(to_string(Backend::structured) == "structured");
    CHECK_THROWS(backend_from_string("analog"));
  }
}
