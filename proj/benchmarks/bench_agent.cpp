#include "dtr/agent.hpp"
#include "dtr/evaluation.hpp"
#include "dtr/random.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

std::vector<dtr::MonthlyEpisode> history(std::size_t months) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> noise(0, 50);
    std::vector<dtr::MonthlyEpisode> out;
    for (std::size_t m = 0; m < months; ++m) {
        std::vector<double> f(30, 11000.0), y(30);
        for (double& x : y) x = 11000 + noise(gen);
        out.push_back(dtr::MonthlyEpisode::coherent(f, y));
    }
    return out;
}

dtr::AgentConfig config() {
    dtr::AgentConfig cfg;
    cfg.tolerance = 0.2 * 330000;
    cfg.adjustment_unit = 2200;
    return cfg;
}

void BM_RunEpisode(benchmark::State& state) {
    const auto months = history(1);
    const auto cfg = config();
    auto table = dtr::init_state_values(months[0].monthly_total, months[0].forecasts);
    dtr::Rng rng(7);
    for (auto _ : state) {
        auto trace = dtr::run_episode(months[0], table, cfg, rng);
        benchmark::DoNotOptimize(trace);
    }
    state.SetItemsProcessed(state.iterations() * 30);
}
BENCHMARK(BM_RunEpisode);

void BM_Train(benchmark::State& state) {
    const auto months = history(static_cast<std::size_t>(state.range(0)));
    auto cfg = config();
    cfg.episodes = 10;
    for (auto _ : state) benchmark::DoNotOptimize(dtr::train(months, cfg));
}
BENCHMARK(BM_Train)->Arg(14)->Arg(120);

void BM_Grid3x3(benchmark::State& state) {
    dtr::ExperimentData data;
    data.training = history(14);
    std::vector<double> f(31, 11000.0), y(31, 9000.0);
    data.testing.push_back({dtr::ForecastSet(dtr::YearMonth(2020, 3), f), y});
    const std::vector<dtr::Tolerance> tols{dtr::Tolerance::parse("10%"), dtr::Tolerance::parse("20%"),
                                           dtr::Tolerance::parse("30%")};
    const std::vector<double> eps{0.05, 0.1, 0.2};
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(dtr::run_grid(data, tols, eps, dtr::ProtocolConfig{}, parallel));
}
BENCHMARK(BM_Grid3x3)->Arg(0)->Arg(1)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
