#include <benchmark/benchmark.h>

#include "offsim/attacks.hpp"
#include "offsim/gf2.hpp"
#include "offsim/qsim.hpp"
#include "offsim/simon.hpp"

using namespace offsim;

namespace {

void BM_Fwht(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> v(std::size_t{1} << n, 1.0);
  for (auto _ : state) {
    fwht(v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_Fwht)->Arg(10)->Arg(16)->Arg(20);

TruthTable periodic_h(int n, Word s) {
  TruthTable h(n, n);
  for (Word x = 0; x < h.size(); ++x) h.values[x] = std::min(x, x ^ s);
  return h;
}

void BM_SimonSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  simon::Sampler sampler(periodic_h(n, 0x5 | (Word{1} << (n - 1))));
  Rng rng = make_rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng));
}
BENCHMARK(BM_SimonSample)->Arg(12)->Arg(20);

void BM_SimonRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = periodic_h(n, 0x3);
  Rng rng = make_rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(simon::run(h, 3, rng));
}
BENCHMARK(BM_SimonRun)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Hadamard(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  qsim::RegisterLayout l;
  l.add("a", q);
  auto s = qsim::init_zero(l);
  for (auto _ : state) {
    qsim::apply_h(s, "a");
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_Hadamard)->Arg(12)->Arg(20);

void BM_OracleXor(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  qsim::RegisterLayout l;
  l.add("x", q).add("y", q);
  auto s = qsim::init_zero(l);
  qsim::apply_h(s, "x");
  TruthTable f(q, q);
  for (Word x = 0; x < f.size(); ++x) f.values[x] = (x * 2654435761u) & width_mask(q);
  for (auto _ : state) qsim::apply_oracle_xor(s, f, "x", "y");
}
BENCHMARK(BM_OracleXor)->Arg(6)->Arg(10);

void BM_AttackEm(benchmark::State& state) {
  AttackParams p;
  p.kind = "em-q1";
  p.n = static_cast<int>(state.range(0));
  p.u = p.n / 2;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_attack(p, seed++).success());
}
BENCHMARK(BM_AttackEm)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
