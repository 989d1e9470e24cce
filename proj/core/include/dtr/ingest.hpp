#pragma once

#include "dtr/calendar.hpp"
#include "dtr/forecasting.hpp"
#include "dtr/time_series.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtr {

/// Reads one value column of a headed CSV (OHLCV by default). Dates may be
/// ISO or DD/MM/YY; rows may come in any order and are sorted ascending.
TimeSeries read_ohlcv_csv(std::istream& in, std::string_view date_column = "Date",
                          std::string_view value_column = "Open");
TimeSeries load_ohlcv_csv(const std::filesystem::path& path, std::string_view date_column = "Date",
                          std::string_view value_column = "Open");

/// Inserts every missing calendar day, linearly interpolated between the
/// nearest observed neighbours.
TimeSeries fill_calendar(const TimeSeries& series);

struct MonthSlice {
    YearMonth month;
    std::vector<double> values;
};

/// Splits a calendar-complete series into whole months over `range`.
/// A month the series only partly covers is a Boundary error.
std::vector<MonthSlice> month_partition(const TimeSeries& series, MonthRange range);

/// Contents of an external forecast file: `date,forecast` rows plus an
/// optional `monthly_total,<value>` row.
struct ExternalForecast {
    std::map<Date, double> daily;
    std::optional<double> monthly_total;

    bool covers(YearMonth month) const;
    /// Distinct months with at least one forecast row.
    std::vector<YearMonth> months() const;
    /// The month's forecasts; the monthly_total row applies when the file
    /// covers exactly one month.
    ForecastSet cycle(YearMonth month) const;
};

ExternalForecast read_external_forecast(std::istream& in);
ExternalForecast load_external_forecast(const std::filesystem::path& path);

} // namespace dtr
