#include "dtr/error.hpp"
#include "dtr/evaluation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace dtr;
using V = std::vector<double>;

namespace {

ExperimentData synthetic(std::size_t train_months, double drop_from_day, double drop, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0, 5);
    ExperimentData data;
    for (std::size_t m = 0; m < train_months; ++m) {
        V f(30, 1000.0), y(30);
        for (double& x : y) x = 1000 + noise(gen);
        data.training.push_back(MonthlyEpisode::coherent(f, y));
    }
    V f(31, 1000.0), y(31);
    for (std::size_t d = 0; d < 31; ++d) y[d] = (static_cast<double>(d) + 1 >= drop_from_day ? 1000 * (1 - drop) : 1000) + noise(gen);
    data.testing.push_back(TestCycle{ForecastSet(YearMonth(2020, 3), f), y});
    return data;
}

} // namespace

TEST(Mape, Examples) {
    EXPECT_EQ(mape(V{5, 7}, V{5, 7}), 0.0);
    EXPECT_NEAR(mape(V{100, 200}, V{110, 180}), 10.0, 1e-12);
    EXPECT_NEAR(mape(V{294452}, V{367706}), 24.878, 5e-4);
    EXPECT_EQ(std::lround(mape(V{294452}, V{367706})), 25);
}

TEST(Mape, Errors) {
    EXPECT_THROW(mape(V{1, 2}, V{1}), Error);
    EXPECT_THROW(mape(V{}, V{}), Error);
    try {
        mape(V{0, 1}, V{1, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
    }
}

TEST(Mape, ScaleInvariant) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(1, 100);
    for (int i = 0; i < 100; ++i) {
        V a(10), f(10);
        for (auto& x : a) x = u(gen);
        for (auto& x : f) x = u(gen);
        const double c = u(gen);
        V ca = a, cf = f;
        for (auto& x : ca) x *= c;
        for (auto& x : cf) x *= c;
        EXPECT_NEAR(mape(ca, cf), mape(a, f), 1e-12 * mape(a, f) + 1e-12);
    }
}

TEST(MapeRec, ReferenceSpotChecks) {
    EXPECT_NEAR(mape_rec(294452, 298910), 1.514, 5e-4);
    EXPECT_EQ(std::lround(mape_rec(294452, 298910)), 2);
    EXPECT_NEAR(mape_rec(294452, 294165), 0.0975, 5e-4);
    EXPECT_EQ(std::lround(mape_rec(294452, 294165)), 0);
    EXPECT_EQ(mape_rec(1234.5, 1234.5), 0.0);
    EXPECT_GT(mape_rec(1234.5, 1234.6), 0.0);
}

TEST(PctImprovement, ReferenceSpotChecks) {
    EXPECT_NEAR(pct_improvement(367706, 333308), 9.355, 5e-4);
    EXPECT_EQ(std::lround(pct_improvement(367706, 333308)), 9);
    EXPECT_NEAR(pct_improvement(367706, 298910), 18.7095, 1e-4);
    EXPECT_EQ(std::lround(pct_improvement(367706, 298910)), 19);
    EXPECT_EQ(std::lround(pct_improvement(367706, 294165)), 20);
    EXPECT_EQ(pct_improvement(10, 10), 0.0);
    // Overshoots and undershoots both count as improvement magnitude.
    EXPECT_EQ(pct_improvement(100, 90), pct_improvement(100, 110));
}

TEST(Tolerance, ParseAndResolve) {
    const auto pct = Tolerance::parse("20%");
    EXPECT_TRUE(pct.percent);
    EXPECT_EQ(pct.value, 20.0);
    EXPECT_EQ(pct.str(), "20%");
    const ForecastSet fs(YearMonth(2020, 3), V(31, 100.0));
    EXPECT_NEAR(pct.resolve(fs), 620.0, 1e-9);
    EXPECT_NEAR(*pct.adjustment_unit(fs), 20.0, 1e-12);
    const auto abs = Tolerance::parse("73473");
    EXPECT_FALSE(abs.percent);
    EXPECT_EQ(abs.resolve(fs), 73473.0);
    EXPECT_FALSE(abs.adjustment_unit(fs).has_value());
    EXPECT_THROW(Tolerance::parse("abc"), Error);
    EXPECT_THROW(Tolerance::parse("-5%"), Error);
    EXPECT_THROW(Tolerance::parse(""), Error);
}

TEST(MetricReport, RowsFollowTheTrace) {
    const TestCycle cycle{ForecastSet(YearMonth(2021, 2), V(28, 10.0)), V(28, 9.0)};
    ReconciliationTrace trace;
    for (std::size_t d = 1; d <= 28; ++d) trace.push_back({d, Action::keep, 10, 9, 280.0 - static_cast<double>(d)});
    const auto report = build_metric_report(cycle, trace);
    ASSERT_EQ(report.rows.size(), 28u);
    EXPECT_EQ(report.rows.front().date, Date(2021, 2, 1));
    EXPECT_EQ(report.rows.back().date, Date(2021, 2, 28));
    EXPECT_EQ(report.base_total, 280.0);
    EXPECT_EQ(report.actual_total, 252.0);
    EXPECT_NEAR(report.final_row().mape_rec_pct, mape_rec(252, 252), 1e-12);
    EXPECT_NEAR(report.final_row().pct_f, 10.0, 1e-12);
    EXPECT_NEAR(report.base_mape, 100.0 * 28 / 252, 1e-9);

    std::ostringstream os;
    write_metrics_csv(os, std::span<const MetricReport>(&report, 1));
    const std::string csv = os.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "date,actual,forecast,rmf,mape_rec_pct,pct_f");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 29);
}

TEST(Protocol, ToleranceResolvesAgainstFirstTestCycle) {
    const auto data = synthetic(2, 40, 0, 1);
    ProtocolConfig cfg;
    cfg.tolerance = Tolerance::parse("20%");
    const auto agent = resolve_agent_config(cfg, data);
    EXPECT_NEAR(agent.tolerance, 0.2 * 31000, 1e-9);
    EXPECT_NEAR(agent.unit(), 200.0, 1e-9);
    cfg.agent.adjustment_unit = 7.0;
    EXPECT_EQ(resolve_agent_config(cfg, data).unit(), 7.0);
}

TEST(Protocol, RegimeShiftPullsRmfTowardActuals) {
    const auto data = synthetic(14, 10, 0.2, 3);
    ProtocolConfig cfg;
    cfg.agent.seed = 5;
    const auto result = run_protocol(data, cfg);
    ASSERT_EQ(result.reports.size(), 1u);
    const auto& report = result.reports.front();
    EXPECT_EQ(report.rows.size(), 31u);
    EXPECT_LT(report.final_row().rmf, report.base_total);
    EXPECT_LT(report.final_row().mape_rec_pct, report.base_mape);
}

TEST(Protocol, NoTrainingInitialisesFromTestCycle) {
    auto data = synthetic(0, 10, 0.2, 4);
    const auto result = run_protocol(data, ProtocolConfig{});
    EXPECT_EQ(result.reports.front().rows.size(), 31u);
}

TEST(Grid, ShapeOrderAndDeterminism) {
    const auto data = synthetic(3, 10, 0.2, 6);
    const std::vector<Tolerance> tols{Tolerance::parse("10%"), Tolerance::parse("20%"), Tolerance::parse("30%")};
    const V eps{0.05, 0.1, 0.2};
    ProtocolConfig base;
    base.agent.seed = 11;
    const auto a = run_grid(data, tols, eps, base, true);
    const auto b = run_grid(data, tols, eps, base, false);
    ASSERT_EQ(a.rows.size(), 9u);
    for (std::size_t k = 0; k < 9; ++k) {
        EXPECT_EQ(a.rows[k].tolerance.str(), tols[k % 3].str());
        EXPECT_EQ(a.rows[k].epsilon, eps[k / 3]);
        EXPECT_EQ(a.rows[k].seed, grid_cell_seed(11, k % 3, k / 3));
        EXPECT_EQ(a.rows[k].mape_rec_pct, b.rows[k].mape_rec_pct);
        EXPECT_EQ(a.rows[k].pct_f, b.rows[k].pct_f);
        EXPECT_FALSE(a.rows[k].error.has_value());
    }
    std::ostringstream os;
    write_grid_csv(os, a);
    const std::string csv = os.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "tolerance,epsilon,mape_rec_pct,pct_f");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

TEST(Grid, SingleCellEqualsDirectRun) {
    const auto data = synthetic(3, 12, 0.15, 7);
    ProtocolConfig base;
    base.agent.seed = 3;
    const Tolerance tol = Tolerance::parse("20%");
    const double eps = 0.1;
    const auto grid = run_grid(data, std::span<const Tolerance>(&tol, 1), std::span<const double>(&eps, 1), base);
    ASSERT_EQ(grid.rows.size(), 1u);
    ProtocolConfig direct = base;
    direct.tolerance = tol;
    direct.agent.exploration = eps;
    direct.agent.seed = grid_cell_seed(3, 0, 0);
    const auto result = run_protocol(data, direct);
    EXPECT_EQ(grid.rows[0].mape_rec_pct, result.reports.back().final_row().mape_rec_pct);
    EXPECT_EQ(grid.rows[0].pct_f, result.reports.back().final_row().pct_f);
}

TEST(Grid, FailedCellsAreRecorded) {
    const auto data = synthetic(1, 12, 0.15, 8);
    const Tolerance tol = Tolerance::parse("20%");
    const V eps{0.1, 1.5};
    const auto grid = run_grid(data, std::span<const Tolerance>(&tol, 1), eps, ProtocolConfig{});
    ASSERT_EQ(grid.rows.size(), 2u);
    EXPECT_FALSE(grid.rows[0].error.has_value());
    ASSERT_TRUE(grid.rows[1].error.has_value());
    EXPECT_TRUE(std::isnan(grid.rows[1].mape_rec_pct));
    EXPECT_THROW(run_grid(data, {}, eps, ProtocolConfig{}), Error);
}
