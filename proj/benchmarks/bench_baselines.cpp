#include "dtr/baselines.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_POls(benchmark::State& state) {
    const auto s = dtr::build_two_level(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dtr::p_ols(s));
}
BENCHMARK(BM_POls)->Arg(31)->Arg(365);

void BM_PGls(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto s = dtr::build_two_level(static_cast<std::size_t>(n));
    const dtr::Matrix a = dtr::Matrix::Random(n + 1, n + 1);
    const dtr::Matrix cov = a * a.transpose() + dtr::Matrix::Identity(n + 1, n + 1);
    for (auto _ : state) benchmark::DoNotOptimize(dtr::p_gls(s, cov));
}
BENCHMARK(BM_PGls)->Arg(31)->Arg(365);

void BM_Reconcile(benchmark::State& state) {
    const auto s = dtr::build_two_level(31);
    const auto p = dtr::p_ols(s);
    const dtr::HierarchyVector y(dtr::Vector::LinSpaced(32, 1, 32));
    for (auto _ : state) benchmark::DoNotOptimize(dtr::reconcile(s, p, y));
}
BENCHMARK(BM_Reconcile);

} // namespace
