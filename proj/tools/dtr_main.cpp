// dtr: train-then-reconcile experiments from the command line.
//
//   dtr run --config experiment.ini
//   dtr grid --config experiment.ini --grid-epsilons 0,0.05,0.1
//   dtr reconcile --config experiment.ini --qtable-path out/qtable.txt
//   dtr validate-data --data-path nifty.csv --test-range 2020-03
//
// Config files are flat `key = value` lines using the same names as the
// flags (underscores or dashes). Flags override the file.

#include "dtr/error.hpp"
#include "dtr/experiment.hpp"
#include "dtr/run_config.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

namespace {

enum Exit { kOk = 0, kConfig = 1, kData = 2, kRuntime = 3 };

int exit_code(dtr::ErrorKind kind) {
    using dtr::ErrorKind;
    switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidWeights:
    case ErrorKind::InvalidShares:
        return kConfig;
    case ErrorKind::Schema:
    case ErrorKind::Parse:
    case ErrorKind::DuplicateKey:
    case ErrorKind::Boundary:
    case ErrorKind::Io:
    case ErrorKind::InsufficientData:
    case ErrorKind::EmptyCycle:
    case ErrorKind::Shape:
        return kData;
    default:
        return kRuntime;
    }
}

const std::map<std::string, std::string>& help_text() {
    static const std::map<std::string, std::string> h{
        {"data_path", "OHLCV CSV with a header row"},
        {"date_column", "date column name (default Date)"},
        {"value_column", "value column name (default Open)"},
        {"train_range", "training months, YYYY-MM..YYYY-MM"},
        {"test_range", "test months, YYYY-MM or YYYY-MM..YYYY-MM"},
        {"forecaster", "naive | seasonal_naive | drift | external"},
        {"seasonal_period", "period for seasonal_naive (default 7)"},
        {"external_forecast_path", "CSV date,forecast (+ optional monthly_total row)"},
        {"tolerance", "absolute band or percentage of the cycle total, e.g. 20%"},
        {"adjustment_unit", "size of one daily move (default: derived from tolerance)"},
        {"epsilon", "exploration probability"},
        {"step_size", "learning rate alpha"},
        {"discount", "discount factor gamma"},
        {"episodes", "passes over the training months"},
        {"seed", "root seed for every random stream"},
        {"online_updates", "keep learning while reconciling (true/false)"},
        {"clamp_nonnegative", "floor adjusted forecasts at zero (true/false)"},
        {"grid_tolerances", "comma list, e.g. 10%,20%,30%"},
        {"grid_epsilons", "comma list, e.g. 0.05,0.1,0.2"},
        {"parallel_grid", "run grid cells concurrently (true/false)"},
        {"output_dir", "report directory (default out)"},
        {"qtable_path", "snapshot to reconcile from"},
    };
    return h;
}

std::string dashed(std::string s) {
    for (char& c : s) {
        if (c == '_') c = '-';
    }
    return s;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int run_verb(const dtr::RunConfig& cfg, dtr::RunMode mode) {
    const auto outcome = dtr::run_experiment(cfg, mode);
    print_warnings(outcome.warnings);
    if (outcome.protocol) {
        for (const auto& report : outcome.protocol->reports) std::cout << dtr::final_day_summary(report) << '\n';
    }
    if (outcome.grid) {
        std::printf("%-10s %-8s %14s %12s %10s\n", "tolerance", "epsilon", "resolved", "MAPE_rec%", "%_f");
        for (const auto& row : outcome.grid->rows) {
            std::printf("%-10s %-8g %14.1f %12.3f %10.3f%s\n", row.tolerance.str().c_str(), row.epsilon,
                        row.resolved_tolerance, row.mape_rec_pct, row.pct_f, row.error ? "  (failed)" : "");
        }
    }
    for (const auto& path : outcome.written) std::cout << "wrote " << path.string() << '\n';
    return kOk;
}

int validate_verb(const dtr::RunConfig& cfg) {
    const auto check = dtr::check_data(cfg);
    std::cout << cfg.data_path.string() << ": " << check.raw.size() << " rows, " << check.raw.first_date().iso()
              << " to " << check.raw.last_date().iso() << ", " << check.filled.size() - check.raw.size()
              << " calendar days interpolated\n";
    auto list = [](const char* label, const std::vector<dtr::MonthSlice>& slices) {
        if (slices.empty()) return;
        std::cout << label << ": " << slices.size() << " months (" << slices.front().month.str() << " to "
                  << slices.back().month.str() << ")\n";
    };
    list("train", check.train);
    list("test", check.test);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deep temporal reconciliation of daily forecasts against a monthly total"};
    app.set_config("--config", "", "flat key = value config file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();
    app.require_subcommand(1);

    std::map<std::string, std::string> values;
    for (auto key : dtr::RunConfig::keys()) {
        const std::string name(key);
        auto* opt = app.add_option("--" + dashed(name) + ",--" + name, values[name], help_text().at(name));
        // Config files hand comma lists over as separate values.
        if (name.rfind("grid_", 0) == 0) opt->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    }
    auto* run = app.add_subcommand("run", "train, reconcile the test months and write reports");
    auto* grid = app.add_subcommand("grid", "sweep tolerance x epsilon, one agent per cell");
    auto* reconcile = app.add_subcommand("reconcile", "stream the test months from a saved Q-table");
    auto* validate = app.add_subcommand("validate-data", "load, fill and partition the data only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        dtr::RunConfig cfg;
        for (auto key : dtr::RunConfig::keys()) {
            const std::string name(key);
            if (app.get_option("--" + name)->count() > 0) cfg.set(name, values[name]);
        }
        if (*validate) return validate_verb(cfg);
        if (*run) return run_verb(cfg, dtr::RunMode::run);
        if (*grid) return run_verb(cfg, dtr::RunMode::grid);
        if (*reconcile) return run_verb(cfg, dtr::RunMode::reconcile);
        return kConfig;
    } catch (const dtr::Error& e) {
        std::cerr << "dtr: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "dtr: " << e.what() << '\n';
        return kRuntime;
    }
}
