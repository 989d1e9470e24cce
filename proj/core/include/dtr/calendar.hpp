#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace dtr {

/// Calendar day. Thin wrapper over sys_days so arithmetic is in whole days.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
    Date(int year, unsigned month, unsigned day);

    /// Accepts ISO `YYYY-MM-DD`, `DD/MM/YY` and `DD/MM/YYYY`.
    static Date parse(std::string_view text);

    std::chrono::sys_days sys_days() const noexcept { return days_; }
    std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{days_}; }
    int year() const noexcept;
    unsigned month() const noexcept;
    unsigned day() const noexcept;

    Date plus_days(long n) const noexcept { return Date{days_ + std::chrono::days{n}}; }
    long days_until(Date other) const noexcept { return (other.days_ - days_).count(); }

    std::string iso() const;

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

/// Calendar month identifier, the label of one low-frequency cycle.
class YearMonth {
public:
    constexpr YearMonth() = default;
    YearMonth(int year, unsigned month);

    /// `YYYY-MM`.
    static YearMonth parse(std::string_view text);
    static YearMonth of(Date date) { return YearMonth(date.year(), date.month()); }

    int year() const noexcept { return year_; }
    unsigned month() const noexcept { return month_; }
    unsigned day_count() const noexcept;
    Date first_day() const { return Date(year_, month_, 1); }
    Date last_day() const { return Date(year_, month_, day_count()); }
    YearMonth next() const;

    std::string str() const;

    friend constexpr auto operator<=>(const YearMonth&, const YearMonth&) = default;

private:
    int year_ = 1970;
    unsigned month_ = 1;
};

/// Inclusive range of months.
struct MonthRange {
    YearMonth first;
    YearMonth last;

    /// `YYYY-MM..YYYY-MM` or a single `YYYY-MM`.
    static MonthRange parse(std::string_view text);
    std::size_t size() const;
    bool contains(YearMonth m) const { return first <= m && m <= last; }
    std::string str() const;
};

} // namespace dtr
