#pragma once

#include "dtr/agent.hpp"
#include "dtr/calendar.hpp"
#include "dtr/forecasting.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtr {

/// Mean absolute percentage error, in percent.
double mape(std::span<const double> actuals, std::span<const double> forecasts);

/// |actual_total - rmf| / |actual_total|, in percent.
double mape_rec(double actual_total, double rmf);

/// |base_total - rmf| / |base_total|, in percent.
double pct_improvement(double base_total, double rmf);

/// A tolerance as configured: absolute, or a percentage of the cycle's
/// monthly forecast total.
struct Tolerance {
    double value = 0.0;
    bool percent = false;

    /// "20%" or "1234.5".
    static Tolerance parse(std::string_view text);
    std::string str() const;

    /// Absolute tolerance for a cycle. A percentage resolves against the sum
    /// of the cycle's daily base forecasts.
    double resolve(const ForecastSet& cycle) const;
    /// Percentage tolerances spread the band over the cycle:
    /// unit = resolved / n, i.e. the same percentage of the mean daily
    /// forecast. Absolute tolerances leave the agent default.
    std::optional<double> adjustment_unit(const ForecastSet& cycle) const;
};

/// One cycle to reconcile: base forecasts plus the realised actuals.
struct TestCycle {
    ForecastSet forecast;
    std::vector<double> actuals;
};

/// Everything a train-then-reconcile run needs.
struct ExperimentData {
    std::vector<MonthlyEpisode> training;
    std::vector<TestCycle> testing;
};

struct MetricRow {
    Date date;
    double actual = 0.0;
    double forecast = 0.0;
    double rmf = 0.0;
    double mape_rec_pct = 0.0;
    double pct_f = 0.0;
};

/// Per-day RMF metrics for one cycle, plus the cycle-level baseline.
struct MetricReport {
    YearMonth cycle;
    std::vector<MetricRow> rows;
    double base_total = 0.0;
    double actual_total = 0.0;
    /// MAPE of the unreconciled monthly forecast against the monthly actual.
    double base_mape = 0.0;
    /// MAPE of the daily base forecasts.
    double daily_mape = 0.0;

    const MetricRow& final_row() const;
};

MetricReport build_metric_report(const TestCycle& cycle, const ReconciliationTrace& trace);

/// Header `date,actual,forecast,rmf,mape_rec_pct,pct_f`; reports are
/// concatenated in order.
void write_metrics_csv(std::ostream& out, std::span<const MetricReport> reports);

/// Agent settings for one run before the tolerance is resolved.
struct ProtocolConfig {
    AgentConfig agent;
    Tolerance tolerance{20.0, true};
};

/// Resolves tolerance (and adjustment unit, unless set explicitly) against
/// the first test cycle.
AgentConfig resolve_agent_config(const ProtocolConfig& cfg, const ExperimentData& data);

struct ProtocolResult {
    AgentConfig agent;
    ValueTable table;
    std::vector<ReconciliationTrace> traces;
    std::vector<MetricReport> reports;
};

/// Trains on data.training (or initialises from the first test cycle when
/// there is none), then streams every test cycle in order with the table
/// carried across cycles.
ProtocolResult run_protocol(const ExperimentData& data, const ProtocolConfig& cfg);

/// As run_protocol, starting from an existing table instead of training.
ProtocolResult reconcile_protocol(const ExperimentData& data, const ProtocolConfig& cfg, ValueTable table);

struct GridRow {
    Tolerance tolerance;
    double epsilon = 0.0;
    double resolved_tolerance = 0.0;
    double mape_rec_pct = 0.0;
    double pct_f = 0.0;
    std::uint64_t seed = 0;
    /// Set when the cell failed; metrics are NaN then.
    std::optional<std::string> error;
};

struct GridReport {
    std::vector<GridRow> rows;
};

/// Seed of grid cell (i, j): derive_seed(seed, "grid:i:j").
std::uint64_t grid_cell_seed(std::uint64_t seed, std::size_t tolerance_index, std::size_t epsilon_index);

/// One independent agent per (tolerance, epsilon) cell. Rows are
/// epsilon-major: every tolerance for the first epsilon, then the next.
/// Final-day metrics of the last test cycle are reported.
/// Cell failures are recorded in the row, not thrown.
GridReport run_grid(const ExperimentData& data, std::span<const Tolerance> tolerances,
                    std::span<const double> epsilons, const ProtocolConfig& base, bool parallel = true);

/// Header `tolerance,epsilon,mape_rec_pct,pct_f`.
void write_grid_csv(std::ostream& out, const GridReport& report);

} // namespace dtr
