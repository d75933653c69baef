#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "minvec/counting.hpp"
#include "minvec/groups.hpp"
#include "minvec/io.hpp"
#include "minvec/orders.hpp"
#include "minvec/padic.hpp"
#include "minvec/testfunc.hpp"

using namespace minvec;

namespace {

std::string path(const std::string& rel) { return std::string(MINVEC_BENCH_DATA_DIR) + "/" + rel; }

orders::InductionDatum datum(const std::string& id) {
  return io::to_data(io::read_datum(path("datums/" + id + ".datum"))).front();
}

void BM_ModMatMul(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  std::mt19937_64 rng(1);
  ModMat a(n), b(n);
  for (auto& x : a.a) x = static_cast<std::int64_t>(rng() % 729);
  for (auto& x : b.a) x = static_cast<std::int64_t>(rng() % 729);
  for (auto _ : st) benchmark::DoNotOptimize(mul(a, b, 729));
}
BENCHMARK(BM_ModMatMul)->Arg(2)->Arg(4);

void BM_PadicInverse(benchmark::State& st) {
  const padic::PrecisionCtx ctx(3, 12);
  const auto x = padic::MatrixApprox::from_exact(ModMat::from_rows({{1, 3}, {9, 2}}), -1, ctx);
  for (auto _ : st) benchmark::DoNotOptimize(padic::mat_inv(x));
}
BENCHMARK(BM_PadicInverse);

void BM_K0(benchmark::State& st) {
  const auto d = datum(st.range(0) == 1 ? "n2e2j1p3" : "n2e2j3p3");
  for (auto _ : st) benchmark::DoNotOptimize(orders::k0(d));
}
BENCHMARK(BM_K0)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SimpleCharacter(benchmark::State& st) {
  const auto d = datum("n2e1j2p3");
  for (auto _ : st) {
    const auto fam = groups::build_subgroups(d);
    benchmark::DoNotOptimize(groups::simple_character(d, fam));
  }
}
BENCHMARK(BM_SimpleCharacter)->Unit(benchmark::kMillisecond);

void BM_EnumerateS(benchmark::State& st) {
  const auto q = io::read_query(path("queries/diag3.query"));
  const auto t = counting::make_torus(q);
  for (auto _ : st) benchmark::DoNotOptimize(counting::enumerate_S(q, t));
}
BENCHMARK(BM_EnumerateS)->Unit(benchmark::kMillisecond);

void BM_ConvolutionPairwise(benchmark::State& st) {
  auto k = std::make_shared<const testfunc::Kpi>(testfunc::build_Kpi({datum("n2e2j1p3")}));
  const auto w = testfunc::make_omega(k);
  for (auto _ : st) benchmark::DoNotOptimize(testfunc::convolve_check(w));
}
BENCHMARK(BM_ConvolutionPairwise)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
