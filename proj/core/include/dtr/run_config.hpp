#pragma once

#include "dtr/agent.hpp"
#include "dtr/calendar.hpp"
#include "dtr/evaluation.hpp"
#include "dtr/forecasting.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtr {

/// One experiment, as read from a flat key=value config plus flag overrides.
struct RunConfig {
    std::filesystem::path data_path;
    std::string date_column = "Date";
    std::string value_column = "Open";
    std::optional<MonthRange> train_range;
    std::optional<MonthRange> test_range;
    Forecaster forecaster = Forecaster::naive;
    std::size_t seasonal_period = 7;
    std::optional<std::filesystem::path> external_forecast_path;
    ProtocolConfig protocol;
    std::vector<Tolerance> grid_tolerances;
    std::vector<double> grid_epsilons;
    bool parallel_grid = true;
    std::filesystem::path output_dir = "out";
    /// Snapshot to reconcile from instead of training.
    std::optional<std::filesystem::path> qtable_path;

    /// Recognised keys, in the order canonical() prints them.
    static const std::vector<std::string_view>& keys();
    /// Assigns one field from its text form. Unknown keys and malformed
    /// values are InvalidConfig errors naming the key.
    void set(std::string_view key, std::string_view value);
    static RunConfig from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

    bool has_grid() const noexcept { return !grid_tolerances.empty() || !grid_epsilons.empty(); }

    /// Cross-field checks: a test range is present, training (if any) ends
    /// before it starts, exactly one forecast source, valid agent fields.
    void validate() const;
    /// As validate(), minus the agent and forecaster checks; enough for
    /// ingestion alone.
    void validate_data_fields() const;

    /// `key=value` lines for every field, in keys() order.
    std::string canonical() const;
};

} // namespace dtr
