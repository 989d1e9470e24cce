#include "dtr/evaluation.hpp"

#include "dtr/error.hpp"
#include "dtr/random.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <ostream>

namespace dtr {
namespace {

std::string fixed(double x, int digits) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string shortest(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

} // namespace

double mape(std::span<const double> actuals, std::span<const double> forecasts) {
    if (actuals.size() != forecasts.size()) {
        throw Error(ErrorKind::Shape, "mape: " + std::to_string(actuals.size()) + " actuals vs " +
                                          std::to_string(forecasts.size()) + " forecasts");
    }
    if (actuals.empty()) throw Error(ErrorKind::InsufficientData, "mape of an empty series");
    double total = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        if (actuals[i] == 0.0) {
            throw Error(ErrorKind::DivisionByZero, "mape: actual at position " + std::to_string(i) + " is zero");
        }
        total += std::abs(actuals[i] - forecasts[i]) / std::abs(actuals[i]);
    }
    return total / static_cast<double>(actuals.size()) * 100.0;
}

double mape_rec(double actual_total, double rmf) {
    if (actual_total == 0.0) throw Error(ErrorKind::DivisionByZero, "mape_rec: actual total is zero");
    return std::abs(actual_total - rmf) / std::abs(actual_total) * 100.0;
}

double pct_improvement(double base_total, double rmf) {
    if (base_total == 0.0) throw Error(ErrorKind::DivisionByZero, "pct_improvement: base total is zero");
    return std::abs(base_total - rmf) / std::abs(base_total) * 100.0;
}

Tolerance Tolerance::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    Tolerance t;
    if (!text.empty() && text.back() == '%') {
        t.percent = true;
        text.remove_suffix(1);
    }
    const std::string body(text);
    char* end = nullptr;
    t.value = std::strtod(body.c_str(), &end);
    if (body.empty() || end != body.c_str() + body.size() || !std::isfinite(t.value) || !(t.value > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "tolerance '" + std::string(text) + "' must be a positive number or percentage");
    }
    return t;
}

std::string Tolerance::str() const { return shortest(value) + (percent ? "%" : ""); }

double Tolerance::resolve(const ForecastSet& cycle) const {
    return percent ? value / 100.0 * cycle.daily_sum() : value;
}

std::optional<double> Tolerance::adjustment_unit(const ForecastSet& cycle) const {
    if (!percent) return std::nullopt;
    return resolve(cycle) / static_cast<double>(cycle.size());
}

const MetricRow& MetricReport::final_row() const {
    if (rows.empty()) throw Error(ErrorKind::InsufficientData, "metric report for " + cycle.str() + " has no rows");
    return rows.back();
}

MetricReport build_metric_report(const TestCycle& cycle, const ReconciliationTrace& trace) {
    const auto& fc = cycle.forecast;
    if (trace.size() > fc.size() || trace.size() > cycle.actuals.size()) {
        throw Error(ErrorKind::Shape, "trace longer than the cycle " + fc.cycle().str());
    }
    MetricReport report;
    report.cycle = fc.cycle();
    report.base_total = fc.monthly_total();
    report.actual_total = std::accumulate(cycle.actuals.begin(), cycle.actuals.end(), 0.0);
    const double base = report.base_total;
    report.base_mape = mape(std::span<const double>(&report.actual_total, 1), std::span<const double>(&base, 1));
    report.daily_mape = mape(cycle.actuals, fc.daily().first(cycle.actuals.size()));
    const Date first = fc.cycle().first_day();
    for (const auto& entry : trace) {
        MetricRow row;
        row.date = first.plus_days(static_cast<long>(entry.day) - 1);
        row.actual = entry.actual;
        row.forecast = fc.daily()[entry.day - 1];
        row.rmf = entry.rmf;
        row.mape_rec_pct = mape_rec(report.actual_total, entry.rmf);
        row.pct_f = pct_improvement(report.base_total, entry.rmf);
        report.rows.push_back(row);
    }
    return report;
}

void write_metrics_csv(std::ostream& out, std::span<const MetricReport> reports) {
    out << "date,actual,forecast,rmf,mape_rec_pct,pct_f\n";
    for (const auto& report : reports) {
        for (const auto& row : report.rows) {
            out << row.date.iso() << ',' << shortest(row.actual) << ',' << shortest(row.forecast) << ','
                << fixed(row.rmf, 4) << ',' << fixed(row.mape_rec_pct, 6) << ',' << fixed(row.pct_f, 6) << '\n';
        }
    }
}

AgentConfig resolve_agent_config(const ProtocolConfig& cfg, const ExperimentData& data) {
    if (data.testing.empty()) throw Error(ErrorKind::InsufficientData, "no test cycle to resolve the tolerance against");
    AgentConfig agent = cfg.agent;
    const ForecastSet& first = data.testing.front().forecast;
    agent.tolerance = cfg.tolerance.resolve(first);
    if (!agent.adjustment_unit) agent.adjustment_unit = cfg.tolerance.adjustment_unit(first);
    agent.validate();
    return agent;
}

ProtocolResult reconcile_protocol(const ExperimentData& data, const ProtocolConfig& cfg, ValueTable table) {
    ProtocolResult result;
    result.agent = resolve_agent_config(cfg, data);
    result.table = std::move(table);
    for (const auto& cycle : data.testing) {
        Rng rng(derive_seed(result.agent.seed, "reconcile:" + cycle.forecast.cycle().str()));
        auto trace = reconcile_online(result.table, cycle.forecast.daily(), cycle.forecast.monthly_total(),
                                      cycle.actuals, result.agent, rng);
        result.reports.push_back(build_metric_report(cycle, trace));
        result.traces.push_back(std::move(trace));
    }
    return result;
}

ProtocolResult run_protocol(const ExperimentData& data, const ProtocolConfig& cfg) {
    const AgentConfig agent = resolve_agent_config(cfg, data);
    ValueTable table;
    if (data.training.empty()) {
        const auto& first = data.testing.front().forecast;
        table = init_state_values(first.monthly_total(), first.daily());
    } else {
        table = train(data.training, agent);
    }
    return reconcile_protocol(data, cfg, std::move(table));
}

std::uint64_t grid_cell_seed(std::uint64_t seed, std::size_t tolerance_index, std::size_t epsilon_index) {
    return derive_seed(seed, "grid:" + std::to_string(tolerance_index) + ":" + std::to_string(epsilon_index));
}

GridReport run_grid(const ExperimentData& data, std::span<const Tolerance> tolerances,
                    std::span<const double> epsilons, const ProtocolConfig& base, bool parallel) {
    if (tolerances.empty() || epsilons.empty()) throw Error(ErrorKind::InvalidConfig, "grid needs at least one tolerance and one epsilon");

    auto run_cell = [&data, &base](Tolerance tol, double eps, std::uint64_t seed) {
        GridRow row;
        row.tolerance = tol;
        row.epsilon = eps;
        row.seed = seed;
        try {
            ProtocolConfig cell = base;
            cell.tolerance = tol;
            cell.agent.exploration = eps;
            cell.agent.seed = seed;
            const ProtocolResult result = run_protocol(data, cell);
            const MetricRow& last = result.reports.back().final_row();
            row.resolved_tolerance = result.agent.tolerance;
            row.mape_rec_pct = last.mape_rec_pct;
            row.pct_f = last.pct_f;
        } catch (const std::exception& e) {
            row.resolved_tolerance = row.mape_rec_pct = row.pct_f = std::nan("");
            row.error = e.what();
        }
        return row;
    };

    std::vector<std::future<GridRow>> pending;
    GridReport report;
    for (std::size_t j = 0; j < epsilons.size(); ++j) {
        for (std::size_t i = 0; i < tolerances.size(); ++i) {
            const auto seed = grid_cell_seed(base.agent.seed, i, j);
            if (parallel) {
                pending.push_back(std::async(std::launch::async, run_cell, tolerances[i], epsilons[j], seed));
            } else {
                report.rows.push_back(run_cell(tolerances[i], epsilons[j], seed));
            }
        }
    }
    for (auto& f : pending) report.rows.push_back(f.get());
    return report;
}

void write_grid_csv(std::ostream& out, const GridReport& report) {
    out << "tolerance,epsilon,mape_rec_pct,pct_f\n";
    for (const auto& row : report.rows) {
        out << row.tolerance.str() << ',' << shortest(row.epsilon) << ',' << fixed(row.mape_rec_pct, 6) << ','
            << fixed(row.pct_f, 6) << '\n';
    }
}

} // namespace dtr
