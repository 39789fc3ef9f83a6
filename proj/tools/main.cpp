#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "offsim/qsim.hpp"

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace offsim;
  CLI::App app{"offline Simon attack simulator"};
  app.require_subcommand(1);

  cli::AttackConfig acfg;
  std::string backend = "sampled";
  std::string out_path;
  std::string format = "json";
  auto* attack = app.add_subcommand("attack", "run seeded key-recovery attacks");
  attack->add_option("kind", acfg.params.kind, "em-q1 fx-q2 fx-q1 chaskey beetle related-key slide-ifx")
      ->required();
  attack->add_option("--n", acfg.params.n, "block width (slide-ifx: |k1|)");
  attack->add_option("--m", acfg.params.m, "key width of the inner cipher");
  attack->add_option("--u", acfg.params.u, "online data bits (beetle: nonce bits)");
  attack->add_option("--c", acfg.params.c, "Simon repetition factor, 0 for the default");
  attack->add_option("--rounds", acfg.params.rounds, "slide-ifx rounds");
  attack->add_option("--rate", acfg.params.rate, "beetle rate bits");
  attack->add_option("--capacity", acfg.params.capacity, "beetle capacity bits");
  attack->add_option("--backend", backend, "exact, structured or sampled");
  attack->add_option("--trials", acfg.trials, "number of seeded runs");
  attack->add_option("--seed", acfg.seed, "base seed");
  attack->add_option("--jobs", acfg.jobs, "worker threads");
  attack->add_option("--out", out_path, "output file, stdout if omitted");
  attack->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  attack->add_flag("--timing", acfg.timing, "record wall-clock seconds (breaks byte-identical output)");

  cli::EstimateConfig ecfg;
  bool ejson = false;
  auto* est = app.add_subcommand("estimate", "closed-form cost estimates");
  est->add_option("--preset", ecfg.preset, "desx prince pride chaskey beetle-light beetle-secure saturnin16 all");
  est->add_option("--n", ecfg.n, "Simon width");
  est->add_option("--m", ecfg.m, "search width");
  est->add_option("--u", ecfg.u, "log2 data for a Q1 estimate");
  est->add_option("--convention", ecfg.convention, "grover-iterations, cipher-calls-2x or gates-cubic");
  est->add_option("--table", ecfg.table, "CSV table: 1, em or fx");
  est->add_flag("--json", ejson, "JSON instead of text");

  cli::BoundsConfig bcfg;
  auto* vb = app.add_subcommand("verify-bounds", "statistical checks of the failure bounds");
  vb->add_option("--suite", bcfg.suite, "all, pbad, prop1 or qaa");
  vb->add_option("--n", bcfg.n, "width");
  vb->add_option("--c", bcfg.c, "repetition factor");
  auto* trials_opt = vb->add_option("--trials", bcfg.trials, "Monte Carlo trials per function");
  vb->add_option("--functions", bcfg.functions, "random functions per suite");
  vb->add_option("--seed", bcfg.seed, "seed");
  std::string vb_out;
  vb->add_option("--out", vb_out, "output file");

  cli::GenConfig gcfg;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write seeded permutation, cipher or instance files");
  gen->add_option("what", gcfg.what, "permutation, cipher or instance")->required();
  gen->add_option("--kind", gcfg.kind, "instance kind: em fx chaskey related-key");
  gen->add_option("--n", gcfg.n, "width");
  gen->add_option("--m", gcfg.m, "key width");
  gen->add_option("--u", gcfg.u, "data bits");
  gen->add_option("--seed", gcfg.seed, "seed");
  gen->add_option("--out", gen_out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*attack) {
      acfg.params.backend = backend_from_string(backend);
      const auto doc = cli::run_attacks(acfg);
      emit(format == "csv" ? cli::attacks_csv(doc) : doc.dump(2) + "\n", out_path);
      return doc.at("completed").get<bool>() ? 0 : 3;
    }
    if (*est) {
      std::cout << cli::run_estimate(ecfg, ejson);
      return 0;
    }
    if (*vb) {
      if (trials_opt->count() > 0 && bcfg.trials == 0) throw cli::ConfigError("--trials must be at least 1");
      emit(cli::run_verify_bounds(bcfg).dump(2) + "\n", vb_out);
      return 0;
    }
    if (*gen) {
      emit(cli::run_gen(gcfg), gen_out);
      return 0;
    }
  } catch (const qsim::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 4;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const WidthError& e) {
    std::cerr << "width error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
