#pragma once

#include "dtr/evaluation.hpp"
#include "dtr/ingest.hpp"
#include "dtr/run_config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dtr {

/// Ingestion results without any forecasting: raw and filled series plus the
/// month slices of both ranges.
struct DataCheck {
    TimeSeries raw;
    TimeSeries filled;
    std::vector<MonthSlice> train;
    std::vector<MonthSlice> test;
};

DataCheck check_data(const RunConfig& cfg);

struct PreparedData {
    DataCheck check;
    ExperimentData data;
    std::vector<std::string> warnings;
};

/// Ingests the data as check_data() does, then attaches base forecasts.
/// Built-in forecasters see only observations before the forecast month.
/// Training months without enough history are skipped with a warning.
PreparedData prepare_data(const RunConfig& cfg);

enum class RunMode { run, grid, reconcile };

struct ExperimentOutcome {
    std::optional<ProtocolResult> protocol;
    std::optional<GridReport> grid;
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> written;
    /// Exact bytes of summary.json.
    std::string summary_json;
};

/// Runs one verb end to end and writes its reports into cfg.output_dir:
/// metrics.csv and qtable.txt (run, reconcile), grid.csv (grid, or run with
/// a grid configured) and summary.json (always).
ExperimentOutcome run_experiment(const RunConfig& cfg, RunMode mode);

/// Human-readable final-day line for one cycle.
std::string final_day_summary(const MetricReport& report);

} // namespace dtr
