#include "dtr/experiment.hpp"

#include "dtr/error.hpp"
#include "dtr/qtable_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dtr {
namespace {

std::string pct(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", x);
    return buf;
}

std::vector<double> actuals_of(const MonthSlice& slice) { return slice.values; }

void write_file(const std::filesystem::path& path, const std::string& bytes, ExperimentOutcome& outcome) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << bytes;
    out.close();
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
    outcome.written.push_back(path);
}

template <class F>
std::string to_text(F&& f) {
    std::ostringstream os;
    f(os);
    return os.str();
}

void warn_reward_scale(const ExperimentData& data, const AgentConfig& agent, std::vector<std::string>& warnings) {
    double max_reward = 0.0;
    double init_scale = 0.0;
    for (const auto& ep : data.training) {
        for (double y : ep.actuals) max_reward = std::max(max_reward, std::abs(y));
        init_scale = std::max(init_scale, std::abs(ep.monthly_total));
    }
    for (const auto& c : data.testing) {
        for (double y : c.actuals) max_reward = std::max(max_reward, std::abs(y));
        init_scale = std::max(init_scale, std::abs(c.forecast.monthly_total()));
    }
    if (agent.step_size * max_reward > init_scale) {
        std::ostringstream os;
        os << "step_size * max|reward| = " << agent.step_size * max_reward
           << " exceeds the initial value scale " << init_scale << "; updates may diverge";
        warnings.push_back(os.str());
    }
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    std::istringstream lines(cfg.canonical());
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find('=');
        const std::string key = line.substr(0, eq);
        // Where the files land does not change what is in them.
        if (key == "output_dir") continue;
        j[key] = line.substr(eq + 1);
    }
    return j;
}

nlohmann::ordered_json agent_json(const AgentConfig& a) {
    nlohmann::ordered_json j;
    j["tolerance"] = a.tolerance;
    j["adjustment_unit"] = a.unit();
    j["epsilon"] = a.exploration;
    j["step_size"] = a.step_size;
    j["discount"] = a.discount;
    j["episodes"] = a.episodes;
    j["seed"] = a.seed;
    j["online_updates"] = a.online_updates;
    j["clamp_nonnegative"] = a.clamp_nonnegative;
    return j;
}

nlohmann::ordered_json report_json(const MetricReport& r) {
    const MetricRow& last = r.final_row();
    nlohmann::ordered_json j;
    j["cycle"] = r.cycle.str();
    j["days"] = r.rows.size();
    j["base_total"] = r.base_total;
    j["actual_total"] = r.actual_total;
    j["base_mape_pct"] = r.base_mape;
    j["daily_mape_pct"] = r.daily_mape;
    j["final_rmf"] = last.rmf;
    j["mape_rec_pct"] = last.mape_rec_pct;
    j["pct_f"] = last.pct_f;
    return j;
}

nlohmann::ordered_json grid_json(const GridReport& g) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : g.rows) {
        nlohmann::ordered_json j;
        j["tolerance"] = row.tolerance.str();
        j["epsilon"] = row.epsilon;
        j["resolved_tolerance"] = row.resolved_tolerance;
        j["mape_rec_pct"] = row.mape_rec_pct;
        j["pct_f"] = row.pct_f;
        j["seed"] = row.seed;
        if (row.error) j["error"] = *row.error;
        rows.push_back(std::move(j));
    }
    return rows;
}

std::string_view mode_name(RunMode mode) {
    switch (mode) {
    case RunMode::run: return "run";
    case RunMode::grid: return "grid";
    case RunMode::reconcile: return "reconcile";
    }
    return "run";
}

} // namespace

DataCheck check_data(const RunConfig& cfg) {
    cfg.validate_data_fields();
    DataCheck check;
    check.raw = load_ohlcv_csv(cfg.data_path, cfg.date_column, cfg.value_column);
    check.filled = fill_calendar(check.raw);
    if (cfg.train_range) check.train = month_partition(check.filled, *cfg.train_range);
    check.test = month_partition(check.filled, *cfg.test_range);
    return check;
}

PreparedData prepare_data(const RunConfig& cfg) {
    cfg.validate();
    PreparedData out;
    out.check = check_data(cfg);
    const TimeSeries& series = out.check.filled;

    std::optional<ExternalForecast> external;
    if (cfg.forecaster == Forecaster::external) external = load_external_forecast(*cfg.external_forecast_path);

    bool warned_fallback = false;
    for (const auto& slice : out.check.train) {
        const auto history = series.values_before(slice.month.first_day());
        std::vector<double> forecast;
        if (external && external->covers(slice.month)) {
            for (Date d = slice.month.first_day(); d <= slice.month.last_day(); d = d.plus_days(1)) {
                forecast.push_back(external->daily.at(d));
            }
        } else {
            Forecaster method = cfg.forecaster;
            if (external) {
                method = Forecaster::naive;
                if (!warned_fallback) {
                    out.warnings.push_back("external forecasts do not cover every training month; "
                                           "uncovered months use naive forecasts");
                    warned_fallback = true;
                }
            }
            try {
                forecast = base_forecast(method, history, slice.values.size(), cfg.seasonal_period);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::InsufficientData) throw;
                out.warnings.push_back("skipping training month " + slice.month.str() + ": " + e.what());
                continue;
            }
        }
        MonthlyEpisode ep;
        ep.forecasts = std::move(forecast);
        ep.actuals = actuals_of(slice);
        ep.monthly_total = 0.0;
        for (double f : ep.forecasts) ep.monthly_total += f;
        out.data.training.push_back(std::move(ep));
    }

    for (const auto& slice : out.check.test) {
        std::optional<ForecastSet> fs;
        if (external) {
            fs = external->cycle(slice.month);
        } else {
            const auto history = series.values_before(slice.month.first_day());
            fs.emplace(slice.month, base_forecast(cfg.forecaster, history, slice.values.size(), cfg.seasonal_period));
        }
        if (fs->incoherent()) {
            std::ostringstream os;
            os << "monthly total for " << slice.month.str() << " differs from the sum of daily forecasts by "
               << pct(100.0 * fs->coherence_gap());
            out.warnings.push_back(os.str());
        }
        out.data.testing.push_back(TestCycle{std::move(*fs), actuals_of(slice)});
    }
    return out;
}

ExperimentOutcome run_experiment(const RunConfig& cfg, RunMode mode) {
    if (mode == RunMode::grid && !cfg.has_grid()) {
        throw Error(ErrorKind::InvalidConfig, "grid needs grid_tolerances and grid_epsilons");
    }
    if (mode == RunMode::reconcile && !cfg.qtable_path) {
        throw Error(ErrorKind::InvalidConfig, "reconcile needs qtable_path");
    }
    PreparedData prepared = prepare_data(cfg);
    ExperimentOutcome outcome;
    outcome.warnings = std::move(prepared.warnings);
    const ExperimentData& data = prepared.data;

    const AgentConfig resolved = resolve_agent_config(cfg.protocol, data);
    warn_reward_scale(data, resolved, outcome.warnings);

    if (mode == RunMode::run) {
        outcome.protocol = run_protocol(data, cfg.protocol);
    } else if (mode == RunMode::reconcile) {
        QTableSnapshot snap = load_qtable(*cfg.qtable_path);
        if (snap.config_hash != config_hash(resolved)) {
            outcome.warnings.push_back("snapshot config_hash " + snap.config_hash +
                                       " differs from the current config (" + config_hash(resolved) + ")");
        }
        outcome.protocol = reconcile_protocol(data, cfg.protocol, std::move(snap.table));
    }
    if (mode == RunMode::grid || (mode == RunMode::run && cfg.has_grid())) {
        outcome.grid = run_grid(data, cfg.grid_tolerances, cfg.grid_epsilons, cfg.protocol, cfg.parallel_grid);
        for (const auto& row : outcome.grid->rows) {
            if (row.error) {
                outcome.warnings.push_back("grid cell tolerance=" + row.tolerance.str() +
                                           " epsilon=" + std::to_string(row.epsilon) + " failed: " + *row.error);
            }
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());

    if (outcome.protocol) {
        const ProtocolResult& p = *outcome.protocol;
        write_file(cfg.output_dir / "metrics.csv", to_text([&](std::ostream& os) { write_metrics_csv(os, p.reports); }),
                   outcome);
        const QTableSnapshot snap{p.table, config_hash(p.agent), p.agent.seed};
        write_file(cfg.output_dir / "qtable.txt", to_text([&](std::ostream& os) { write_qtable(os, snap); }), outcome);
    }
    if (outcome.grid) {
        write_file(cfg.output_dir / "grid.csv", to_text([&](std::ostream& os) { write_grid_csv(os, *outcome.grid); }),
                   outcome);
    }

    nlohmann::ordered_json summary;
    summary["command"] = mode_name(mode);
    summary["seed"] = cfg.protocol.agent.seed;
    summary["config_hash"] = config_hash(resolved);
    summary["config"] = config_json(cfg);
    summary["agent"] = agent_json(resolved);
    summary["training_months"] = data.training.size();
    if (outcome.protocol) {
        nlohmann::ordered_json cycles = nlohmann::ordered_json::array();
        for (const auto& r : outcome.protocol->reports) cycles.push_back(report_json(r));
        summary["cycles"] = std::move(cycles);
    }
    if (outcome.grid) summary["grid"] = grid_json(*outcome.grid);
    summary["warnings"] = outcome.warnings;
    outcome.summary_json = summary.dump(2) + "\n";
    write_file(cfg.output_dir / "summary.json", outcome.summary_json, outcome);
    return outcome;
}

std::string final_day_summary(const MetricReport& report) {
    const MetricRow& last = report.final_row();
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s day %zu: RMF %.0f  MAPE_rec %s  %%_f %s  (base total %.0f, actual total %.0f)",
                  report.cycle.str().c_str(), report.rows.size(), last.rmf, pct(last.mape_rec_pct).c_str(),
                  pct(last.pct_f).c_str(), report.base_total, report.actual_total);
    return buf;
}

} // namespace dtr
