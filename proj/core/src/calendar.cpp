#include "dtr/calendar.hpp"

#include "dtr/error.hpp"

#include <charconv>
#include <cstdio>

namespace dtr {
namespace {

bool parse_uint(std::string_view text, unsigned& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

Date make_checked(int year, unsigned month, unsigned day, std::string_view original) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) throw Error(ErrorKind::Parse, "invalid calendar date '" + std::string(original) + "'");
    return Date{std::chrono::sys_days{ymd}};
}

} // namespace

Date::Date(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) {
        throw Error(ErrorKind::Parse, "invalid calendar date " + std::to_string(year) + "-" +
                                          std::to_string(month) + "-" + std::to_string(day));
    }
    days_ = std::chrono::sys_days{ymd};
}

Date Date::parse(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '"' || text.back() == '\r'))
        text.remove_suffix(1);

    unsigned a = 0, b = 0, c = 0;
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        if (parse_uint(text.substr(0, 4), a) && parse_uint(text.substr(5, 2), b) &&
            parse_uint(text.substr(8, 2), c)) {
            return make_checked(static_cast<int>(a), b, c, text);
        }
    } else if ((text.size() == 8 || text.size() == 10) && text[2] == '/' && text[5] == '/') {
        if (parse_uint(text.substr(0, 2), a) && parse_uint(text.substr(3, 2), b) &&
            parse_uint(text.substr(6), c)) {
            int year = static_cast<int>(c);
            // Two-digit years pivot at 70: 00-69 -> 20xx, 70-99 -> 19xx.
            if (text.size() == 8) year += c < 70 ? 2000 : 1900;
            return make_checked(year, b, a, text);
        }
    }
    throw Error(ErrorKind::Parse, "unrecognised date '" + std::string(text) + "'");
}

int Date::year() const noexcept { return static_cast<int>(ymd().year()); }
unsigned Date::month() const noexcept { return static_cast<unsigned>(ymd().month()); }
unsigned Date::day() const noexcept { return static_cast<unsigned>(ymd().day()); }

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

YearMonth::YearMonth(int year, unsigned month) : year_(year), month_(month) {
    if (month < 1 || month > 12) {
        throw Error(ErrorKind::Parse, "month out of range: " + std::to_string(month));
    }
}

YearMonth YearMonth::parse(std::string_view text) {
    unsigned y = 0, m = 0;
    if (text.size() == 7 && text[4] == '-' && parse_uint(text.substr(0, 4), y) &&
        parse_uint(text.substr(5, 2), m) && m >= 1 && m <= 12) {
        return YearMonth(static_cast<int>(y), m);
    }
    throw Error(ErrorKind::Parse, "unrecognised month '" + std::string(text) + "' (expected YYYY-MM)");
}

unsigned YearMonth::day_count() const noexcept {
    namespace c = std::chrono;
    return static_cast<unsigned>(c::year_month_day_last{c::year{year_}, c::month_day_last{c::month{month_}}}.day());
}

YearMonth YearMonth::next() const {
    return month_ == 12 ? YearMonth(year_ + 1, 1) : YearMonth(year_, month_ + 1);
}

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", year_, month_);
    return buf;
}

MonthRange MonthRange::parse(std::string_view text) {
    const auto sep = text.find("..");
    MonthRange range;
    if (sep == std::string_view::npos) {
        range.first = range.last = YearMonth::parse(text);
    } else {
        range.first = YearMonth::parse(text.substr(0, sep));
        range.last = YearMonth::parse(text.substr(sep + 2));
    }
    if (range.last < range.first) {
        throw Error(ErrorKind::Parse, "month range '" + std::string(text) + "' ends before it starts");
    }
    return range;
}

std::size_t MonthRange::size() const {
    return static_cast<std::size_t>((last.year() - first.year()) * 12 +
                                    (static_cast<int>(last.month()) - static_cast<int>(first.month())) + 1);
}

std::string MonthRange::str() const { return first.str() + ".." + last.str(); }

} // namespace dtr
