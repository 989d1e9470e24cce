#include "dtr/time_series.hpp"

#include "dtr/error.hpp"

#include <algorithm>
#include <cmath>

namespace dtr {

TimeSeries::TimeSeries(std::vector<Date> dates, std::vector<double> values)
    : dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size()) {
        throw Error(ErrorKind::Shape, "time series has " + std::to_string(dates_.size()) + " dates but " +
                                          std::to_string(values_.size()) + " values");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorKind::Parse, "non-finite value at " + dates_[i].iso());
        }
        if (i > 0 && !(dates_[i - 1] < dates_[i])) {
            throw Error(ErrorKind::Shape, "dates not strictly increasing at " + dates_[i].iso());
        }
    }
}

Date TimeSeries::first_date() const {
    if (empty()) throw Error(ErrorKind::InsufficientData, "empty time series");
    return dates_.front();
}

Date TimeSeries::last_date() const {
    if (empty()) throw Error(ErrorKind::InsufficientData, "empty time series");
    return dates_.back();
}

bool TimeSeries::calendar_complete() const noexcept {
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (dates_[i - 1].days_until(dates_[i]) != 1) return false;
    }
    return true;
}

std::span<const double> TimeSeries::values_before(Date date) const {
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
    return std::span<const double>(values_).first(static_cast<std::size_t>(it - dates_.begin()));
}

} // namespace dtr
