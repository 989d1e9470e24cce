#include "dtr/forecasting.hpp"

#include "dtr/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dtr {

std::vector<double> naive(std::span<const double> history, std::size_t h) {
    if (history.empty()) throw Error(ErrorKind::InsufficientData, "naive forecast needs at least one observation");
    return std::vector<double>(h, history.back());
}

std::vector<double> seasonal_naive(std::span<const double> history, std::size_t period, std::size_t h) {
    if (period == 0) throw Error(ErrorKind::InvalidConfig, "seasonal period must be positive");
    if (history.size() < period) {
        throw Error(ErrorKind::InsufficientData, "seasonal naive needs " + std::to_string(period) +
                                                     " observations, got " + std::to_string(history.size()));
    }
    const std::size_t base = history.size() - period;
    std::vector<double> out(h);
    for (std::size_t k = 0; k < h; ++k) out[k] = history[base + k % period];
    return out;
}

std::vector<double> drift(std::span<const double> history, std::size_t h) {
    if (history.size() < 2) throw Error(ErrorKind::InsufficientData, "drift forecast needs at least two observations");
    const double first = history.front();
    const double last = history.back();
    const double slope = (last - first) / static_cast<double>(history.size() - 1);
    std::vector<double> out(h);
    for (std::size_t k = 0; k < h; ++k) out[k] = last + static_cast<double>(k + 1) * slope;
    return out;
}

Forecaster parse_forecaster(std::string_view name) {
    if (name == "naive") return Forecaster::naive;
    if (name == "seasonal_naive") return Forecaster::seasonal_naive;
    if (name == "drift") return Forecaster::drift;
    if (name == "external") return Forecaster::external;
    throw Error(ErrorKind::InvalidConfig, "unknown forecaster '" + std::string(name) + "'");
}

std::string_view to_string(Forecaster f) noexcept {
    switch (f) {
    case Forecaster::naive: return "naive";
    case Forecaster::seasonal_naive: return "seasonal_naive";
    case Forecaster::drift: return "drift";
    case Forecaster::external: return "external";
    }
    return "unknown";
}

std::vector<double> base_forecast(Forecaster method, std::span<const double> history, std::size_t h,
                                  std::size_t seasonal_period) {
    switch (method) {
    case Forecaster::naive: return naive(history, h);
    case Forecaster::seasonal_naive: return seasonal_naive(history, seasonal_period, h);
    case Forecaster::drift: return drift(history, h);
    case Forecaster::external: break;
    }
    throw Error(ErrorKind::InvalidConfig, "external forecasts must be loaded from a file");
}

ForecastSet::ForecastSet(YearMonth cycle, std::vector<double> daily)
    : cycle_(cycle), daily_(std::move(daily)), monthly_total_(0.0) {
    monthly_total_ = daily_sum();
    if (daily_.size() != cycle_.day_count()) {
        throw Error(ErrorKind::Shape, cycle_.str() + " has " + std::to_string(cycle_.day_count()) +
                                          " days but " + std::to_string(daily_.size()) + " forecasts were given");
    }
    for (double x : daily_) {
        if (!std::isfinite(x)) throw Error(ErrorKind::Numeric, "non-finite forecast in " + cycle_.str());
    }
}

ForecastSet::ForecastSet(YearMonth cycle, std::vector<double> daily, double monthly_total)
    : ForecastSet(cycle, std::move(daily)) {
    if (!std::isfinite(monthly_total)) throw Error(ErrorKind::Numeric, "non-finite monthly total");
    monthly_total_ = monthly_total;
}

double ForecastSet::daily_sum() const noexcept { return std::accumulate(daily_.begin(), daily_.end(), 0.0); }

double ForecastSet::coherence_gap() const noexcept {
    const double sum = daily_sum();
    if (sum == 0.0) return monthly_total_ == 0.0 ? 0.0 : INFINITY;
    return std::abs(monthly_total_ - sum) / std::abs(sum);
}

} // namespace dtr
