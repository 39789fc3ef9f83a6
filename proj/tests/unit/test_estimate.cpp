#include <doctest.h>

#include <cmath>
#include <numbers>

#include "offsim/estimate.hpp"

using namespace offsim;

TEST_SUITE("estimate") {
  const double k = std::log2(4.0 / 3.0);

  TEST_CASE("DESX") {
    const auto e = estimate::preset("desx");
    CHECK(e.queries == 135);
    CHECK(e.queries == static_cast<int>(std::ceil(56 / k)));
    CHECK(e.log2_iterations == doctest::Approx(28));
    CHECK(e.log2_time == doctest::Approx(29));
    const auto g = estimate::preset("desx", estimate::TimeConvention::grover_iterations);
    CHECK(g.log2_time == doctest::Approx(28));
  }

  TEST_CASE("PRINCE") {
    const auto e = estimate::preset("prince");
    CHECK(e.log2_time == doctest::Approx(33));
    CHECK(e.c_rounded == doctest::Approx(64 / (64 * k)));
  }

  TEST_CASE("Chaskey under the cubic gate convention") {
    const auto e = estimate::preset("chaskey");
    CHECK(e.log2_data == doctest::Approx(48));
    CHECK(e.log2_time == doctest::Approx(40 + 3 * std::log2(80.0)));
  }

  TEST_CASE("floors") {
    const auto e = estimate::preset("saturnin16");
    REQUIRE(e.security_floor.has_value());
    CHECK(*e.security_floor == doctest::Approx(85));
    CHECK(e.log2_iterations == doctest::Approx((256 - 85) / 2.0));
    CHECK_THROWS(estimate::preset("nope"));
  }

  TEST_CASE("Q1 qubits") {
    estimate::Params p;
    p.model = estimate::Model::q1;
    p.n = 20;
    p.m = 4;
    p.data = 8;
    p.convention = estimate::TimeConvention::grover_iterations;
    const auto e = estimate::estimate_costs(p);
    CHECK(e.log2_data == doctest::Approx(8));
    CHECK(e.log2_iterations == doctest::Approx(8));
    CHECK(e.qubits == 16 + e.queries * (8 + 20) + 1);
  }

  TEST_CASE("D T^2 along the tradeoff curves") {
    for (const auto& r : estimate::em_tradeoffs(32)) {
      CHECK(r.log2_data + 2 * r.log2_time == doctest::Approx(32));
      CHECK(r.log2_dt2 == doctest::Approx(32));
    }
    for (const auto& r : estimate::fx_tradeoffs(32, 16)) CHECK(r.log2_dt2 == doctest::Approx(48));
  }

  TEST_CASE("c formulas") {
    CHECK(estimate::c_rounded(64, 64) == doctest::Approx(1 / k));
    CHECK(estimate::c_precise(64, 64) == doctest::Approx((67 + 2 * std::log2(std::numbers::pi)) / (64 * k)));
  }

  TEST_CASE("CSV tables") {
    const auto csv = estimate::table1_csv();
    CHECK(csv.find("desx") != std::string::npos);
    const auto rows = estimate::em_tradeoffs(8);
    const auto t = estimate::tradeoff_csv(rows);
    CHECK(std::count(t.begin(), t.end(), '\n') == static_cast<long>(rows.size()) + 1);
  }
}
