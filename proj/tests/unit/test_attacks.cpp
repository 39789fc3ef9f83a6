#include <doctest.h>

#include "offsim/attacks.hpp"
#include "offsim/qsim.hpp"
#include "oracles.hpp"

using namespace offsim;

TEST_SUITE("attacks") {
  TEST_CASE("builders reject degenerate embeddings") {
    const EvenMansourInstance zero{random_permutation(6, 1), 0, 5};
    CHECK_THROWS_AS(require_nondegenerate(em_q1_problem(zero, 3)), DegenerateInstance);
    CHECK_THROWS_AS(em_q1_problem(zero, 7), WidthError);

    // Identity P makes every branch periodic.
    const EvenMansourInstance ident{Permutation::identity(6), 0b101011, 7};
    CHECK_FALSE(passes_screen(em_q1_problem(ident, 3)));
  }

  TEST_CASE("EM embedding plants k1") {
    const auto built = make_em_instance(8, 4, 3);
    const auto p = em_q1_problem(built.inst, 4);
    CHECK(passes_screen(p));
    CHECK(p.planted_index == built.inst.k1 >> 4);
    CHECK(p.planted_period == (built.inst.k1 & 15));
    const auto h = xor_with_family(p.family, p.g);
    CHECK(oracle::periods(h.branch(p.planted_index)) == std::vector<Word>{p.planted_period});
  }

  TEST_CASE("u = n leaves a single-branch search") {
    AttackParams p;
    p.kind = "em-q1";
    p.n = 6;
    p.u = 6;
    int ok = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) ok += run_attack(p, s).success();
    CHECK(ok >= 9);
  }

  TEST_CASE("recovered keys reproduce the oracle") {
    AttackParams p;
    p.kind = "fx-q1";
    p.n = 6;
    p.m = 3;
    p.u = 4;
    const auto r = run_attack(p, 7);
    CHECK(r.success());
    if (r.keys_match) CHECK(r.recovered == r.planted);
    CHECK(r.counters.classical_online == r.data);
    CHECK(r.time_f_evals == r.counters.f_queries);
  }

  TEST_CASE("slide period has its top bit set") {
    AttackParams p;
    p.kind = "slide-ifx";
    p.n = 5;
    p.m = 3;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto r = run_attack(p, s);
      if (r.period) CHECK((*r.period >> p.n) == 1);
    }
  }

  TEST_CASE("related-key agrees with exhaustive search") {
    const auto b = make_related_key_instance(8, 4);
    const auto all = exhaustive_related_key(b.oracle);
    CHECK(std::find(all.begin(), all.end(), b.oracle.key) != all.end());
    Rng rng = make_rng(9);
    const auto r = attack_related_key(b.oracle, {}, rng, b.msg);
    if (r.agrees_with_classical) CHECK(*r.agrees_with_classical);
  }

  TEST_CASE("validation") {
    AttackParams p;
    p.kind = "em-q1";
    p.n = 40;
    p.u = 4;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.kind = "nope";
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = {};
    p.kind = "slide-ifx";
    p.n = 4;
    p.m = 2;
    p.backend = Backend::exact;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = {};
    p.kind = "fx-q2";
    p.n = 8;
    p.m = 8;
    p.backend = Backend::exact;
    CHECK_THROWS_AS(validate(p), qsim::CapacityError);
  }

  TEST_CASE("runs are deterministic in the seed") {
    AttackParams p;
    p.kind = "chaskey";
    p.n = 8;
    p.u = 4;
    auto a = run_attack(p, 11).to_json();
    auto b = run_attack(p, 11).to_json();
    a.erase("wall_seconds");
    b.erase("wall_seconds");
    CHECK(a == b);
  }

  TEST_CASE("beetle recovers the key") {
    AttackParams p;
    p.kind = "beetle";
    p.rate = 6;
    p.capacity = 4;
    p.u = 4;
    CHECK(run_attack(p, 2).success());
  }
}
