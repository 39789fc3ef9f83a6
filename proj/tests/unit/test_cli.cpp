#include <doctest.h>

#include "commands.hpp"
#include "offsim/primitives.hpp"
#include "offsim/qsim.hpp"

using namespace offsim;

TEST_SUITE("cli") {
  TEST_CASE("attack documents are deterministic and job-independent") {
    cli::AttackConfig cfg;
    cfg.params.kind = "em-q1";
    cfg.params.n = 8;
    cfg.params.u = 4;
    cfg.trials = 6;
    cfg.seed = 5;
    const auto a = cli::run_attacks(cfg);
    cfg.jobs = 3;
    const auto b = cli::run_attacks(cfg);
    CHECK(a.dump() == b.dump());
    CHECK(a.at("trials") == 6);
    CHECK(a.at("reports").size() == 6);
    CHECK(a.at("completed").get<bool>());
    CHECK(a.at("reports")[0].count("wall_seconds") == 0);

    const auto csv = cli::attacks_csv(a);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  }

  TEST_CASE("attack config errors propagate") {
    cli::AttackConfig cfg;
    cfg.params.kind = "em-q1";
    cfg.params.n = 40;
    CHECK_THROWS_AS(cli::run_attacks(cfg), qsim::CapacityError);
    cfg.params.kind = "nope";
    CHECK_THROWS_AS(cli::run_attacks(cfg), cli::ConfigError);
    cfg.params.kind = "em-q1";
    cfg.params.n = 8;
    cfg.trials = 0;
    CHECK_THROWS_AS(cli::run_attacks(cfg), cli::ConfigError);
  }

  TEST_CASE("estimate text and JSON") {
    cli::EstimateConfig cfg;
    cfg.preset = "desx";
    CHECK(cli::run_estimate(cfg, false).find("135") != std::string::npos);
    const auto j = nlohmann::json::parse(cli::run_estimate(cfg, true));
    CHECK(j.dump().find("135") != std::string::npos);
    cli::EstimateConfig custom;
    custom.n = 64;
    custom.m = 64;
    CHECK_NOTHROW(cli::run_estimate(custom, false));
    cli::EstimateConfig table;
    table.table = "1";
    CHECK(cli::run_estimate(table, false).rfind("Target,", 0) == 0);
  }

  TEST_CASE("verify-bounds flags a small c") {
    cli::BoundsConfig cfg;
    cfg.suite = "pbad";
    cfg.n = 8;
    cfg.c = 1;
    cfg.trials = 200;
    cfg.functions = 3;
    const auto j = cli::run_verify_bounds(cfg);
    const auto& f = j.at("flags");
    CHECK(std::find(f.begin(), f.end(), "c-too-small") != f.end());
  }

  TEST_CASE("gen permutation round trip") {
    cli::GenConfig cfg;
    cfg.what = "permutation";
    cfg.n = 5;
    cfg.seed = 3;
    const auto text = cli::run_gen(cfg);
    const auto p = load_permutation(text);
    CHECK(p == random_permutation(5, 3));
    CHECK(cli::run_gen(cfg) == text);
  }

  TEST_CASE("gen instance") {
    cli::GenConfig cfg;
    cfg.what = "instance";
    cfg.kind = "em";
    cfg.n = 6;
    cfg.u = 3;
    CHECK_NOTHROW(nlohmann::json::parse(cli::run_gen(cfg)));
    cfg.what = "bogus";
    CHECK_THROWS(cli::run_gen(cfg));
  }
}
