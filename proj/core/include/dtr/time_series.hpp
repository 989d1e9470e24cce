#pragma once

#include "dtr/calendar.hpp"

#include <span>
#include <vector>

namespace dtr {

/// Timestamped daily observations. Dates strictly increase and every value is
/// finite; both are checked on construction.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::vector<Date> dates, std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    Date date(std::size_t i) const { return dates_.at(i); }
    double value(std::size_t i) const { return values_.at(i); }

    Date first_date() const;
    Date last_date() const;

    /// True when there is exactly one observation per calendar day.
    bool calendar_complete() const noexcept;

    /// Observations strictly before `date`.
    std::span<const double> values_before(Date date) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
};

} // namespace dtr
