#include "dtr/ingest.hpp"

#include "dtr/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

namespace dtr {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.emplace_back(trim(current));
    return fields;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::size_t find_column(const std::vector<std::string>& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (iequals(header[i], name)) return i;
    }
    throw Error(ErrorKind::Schema, "missing column '" + std::string(name) + "'");
}

double parse_value(std::string field, std::size_t line_no) {
    field.erase(std::remove(field.begin(), field.end(), ','), field.end());
    char* end = nullptr;
    const double x = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(x)) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad value '" + field + "'");
    }
    return x;
}

Date parse_date_at(const std::string& field, std::size_t line_no) {
    try {
        return Date::parse(field);
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad date '" + field + "'");
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open data file " + path.string());
    return in;
}

bool blank(std::string_view line) { return trim(line).empty(); }

} // namespace

TimeSeries read_ohlcv_csv(std::istream& in, std::string_view date_column, std::string_view value_column) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (!have_header && std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) have_header = true;
    }
    if (!have_header) throw Error(ErrorKind::Schema, "empty CSV: no header row");
    // Strip a UTF-8 byte order mark.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split_csv_line(line);
    const std::size_t date_idx = find_column(header, date_column);
    const std::size_t value_idx = find_column(header, value_column);

    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= std::max(date_idx, value_idx)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected at least " +
                                              std::to_string(std::max(date_idx, value_idx) + 1) + " fields");
        }
        rows.emplace_back(parse_date_at(fields[date_idx], line_no), parse_value(fields[value_idx], line_no));
    }
    if (rows.empty()) throw Error(ErrorKind::Schema, "CSV has a header but no data rows");

    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(rows.size());
    values.reserve(rows.size());
    for (const auto& [date, value] : rows) {
        if (!dates.empty() && dates.back() == date) {
            throw Error(ErrorKind::DuplicateKey, "duplicate date " + date.iso());
        }
        dates.push_back(date);
        values.push_back(value);
    }
    return TimeSeries(std::move(dates), std::move(values));
}

TimeSeries load_ohlcv_csv(const std::filesystem::path& path, std::string_view date_column,
                          std::string_view value_column) {
    auto in = open_or_throw(path);
    try {
        return read_ohlcv_csv(in, date_column, value_column);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

TimeSeries fill_calendar(const TimeSeries& series) {
    if (series.empty()) throw Error(ErrorKind::InsufficientData, "cannot fill the calendar of an empty series");
    std::vector<Date> dates;
    std::vector<double> values;
    const auto n_days = static_cast<std::size_t>(series.first_date().days_until(series.last_date()) + 1);
    dates.reserve(n_days);
    values.reserve(n_days);
    dates.push_back(series.date(0));
    values.push_back(series.value(0));
    for (std::size_t i = 1; i < series.size(); ++i) {
        const Date lo = series.date(i - 1);
        const Date hi = series.date(i);
        const double a = series.value(i - 1);
        const double b = series.value(i);
        const long gap = lo.days_until(hi);
        for (long k = 1; k < gap; ++k) {
            dates.push_back(lo.plus_days(k));
            values.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(gap));
        }
        dates.push_back(hi);
        values.push_back(b);
    }
    return TimeSeries(std::move(dates), std::move(values));
}

std::vector<MonthSlice> month_partition(const TimeSeries& series, MonthRange range) {
    if (series.empty()) throw Error(ErrorKind::InsufficientData, "cannot partition an empty series");
    if (!series.calendar_complete()) {
        throw Error(ErrorKind::Shape, "series has calendar gaps; fill the calendar before partitioning");
    }
    const Date first = series.first_date();
    const Date last = series.last_date();
    std::vector<MonthSlice> out;
    out.reserve(range.size());
    for (YearMonth m = range.first; m <= range.last; m = m.next()) {
        if (m.first_day() < first || last < m.last_day()) {
            throw Error(ErrorKind::Boundary, "month " + m.str() + " is not fully covered by the data (" + first.iso() +
                                                 " to " + last.iso() + ")");
        }
        const auto offset = static_cast<std::size_t>(first.days_until(m.first_day()));
        const auto values = series.values().subspan(offset, m.day_count());
        out.push_back(MonthSlice{m, std::vector<double>(values.begin(), values.end())});
    }
    return out;
}

bool ExternalForecast::covers(YearMonth month) const {
    for (Date d = month.first_day(); d <= month.last_day(); d = d.plus_days(1)) {
        if (!daily.contains(d)) return false;
    }
    return true;
}

std::vector<YearMonth> ExternalForecast::months() const {
    std::set<YearMonth> seen;
    for (const auto& [date, value] : daily) seen.insert(YearMonth::of(date));
    return {seen.begin(), seen.end()};
}

ForecastSet ExternalForecast::cycle(YearMonth month) const {
    if (!covers(month)) {
        throw Error(ErrorKind::InsufficientData, "external forecast does not cover every day of " + month.str());
    }
    std::vector<double> values;
    for (Date d = month.first_day(); d <= month.last_day(); d = d.plus_days(1)) values.push_back(daily.at(d));
    if (monthly_total) {
        if (months().size() != 1) {
            throw Error(ErrorKind::InvalidConfig, "monthly_total override is ambiguous: the forecast file spans " +
                                                      std::to_string(months().size()) + " months");
        }
        return ForecastSet(month, std::move(values), *monthly_total);
    }
    return ForecastSet(month, std::move(values));
}

ExternalForecast read_external_forecast(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (!have_header && std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) have_header = true;
    }
    if (!have_header) throw Error(ErrorKind::Schema, "empty forecast file: no header row");
    const auto header = split_csv_line(line);
    const std::size_t date_idx = find_column(header, "date");
    const std::size_t value_idx = find_column(header, "forecast");

    ExternalForecast fc;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= std::max(date_idx, value_idx)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected a date and a forecast");
        }
        const double value = parse_value(fields[value_idx], line_no);
        if (iequals(fields[date_idx], "monthly_total")) {
            if (fc.monthly_total) throw Error(ErrorKind::DuplicateKey, "line " + std::to_string(line_no) + ": second monthly_total row");
            fc.monthly_total = value;
            continue;
        }
        const Date date = parse_date_at(fields[date_idx], line_no);
        if (!fc.daily.emplace(date, value).second) {
            throw Error(ErrorKind::DuplicateKey, "line " + std::to_string(line_no) + ": duplicate date " + date.iso());
        }
    }
    if (fc.daily.empty()) throw Error(ErrorKind::Schema, "forecast file has no rows");
    return fc;
}

ExternalForecast load_external_forecast(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open forecast file " + path.string());
    try {
        return read_external_forecast(in);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

} // namespace dtr
