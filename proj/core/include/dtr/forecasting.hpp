#pragma once

#include "dtr/calendar.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dtr {

/// Base forecasters. Each returns exactly `h` values.
std::vector<double> naive(std::span<const double> history, std::size_t h);
std::vector<double> seasonal_naive(std::span<const double> history, std::size_t period, std::size_t h);
std::vector<double> drift(std::span<const double> history, std::size_t h);

enum class Forecaster { naive, seasonal_naive, drift, external };

Forecaster parse_forecaster(std::string_view name);
std::string_view to_string(Forecaster f) noexcept;

/// Dispatches to one of the built-in forecasters. `external` is rejected:
/// external forecasts are loaded from a file, not computed.
std::vector<double> base_forecast(Forecaster method, std::span<const double> history, std::size_t h,
                                  std::size_t seasonal_period = 7);

/// Base forecasts for one cycle: the daily values plus the monthly total.
class ForecastSet {
public:
    /// The monthly total defaults to the sum of the daily forecasts.
    ForecastSet(YearMonth cycle, std::vector<double> daily);
    /// Explicit monthly total (an externally supplied low-frequency forecast).
    ForecastSet(YearMonth cycle, std::vector<double> daily, double monthly_total);

    YearMonth cycle() const noexcept { return cycle_; }
    std::span<const double> daily() const noexcept { return daily_; }
    std::size_t size() const noexcept { return daily_.size(); }
    double monthly_total() const noexcept { return monthly_total_; }
    double daily_sum() const noexcept;
    double daily_mean() const noexcept { return daily_sum() / static_cast<double>(daily_.size()); }

    /// Relative gap |M - sum(daily)| / |sum(daily)|.
    double coherence_gap() const noexcept;
    /// True when the monthly total disagrees with the daily sum by more than 0.1%.
    bool incoherent() const noexcept { return coherence_gap() > 1e-3; }

private:
    YearMonth cycle_;
    std::vector<double> daily_;
    double monthly_total_;
};

} // namespace dtr
