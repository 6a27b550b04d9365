#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace btcts {

/// Calendar date at daily granularity, stored as days since 1970-01-01.
/// Supports the two input formats the toolkit accepts: ISO 8601
/// (YYYY-MM-DD) and US-style M/D/YYYY.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    static Date from_days(std::int64_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    /// Parses "YYYY-MM-DD" or "M/D/YYYY". Throws UnparseableRow-free
    /// std::invalid_argument; callers attach line context.
    static Date parse(const std::string& text);

    std::int64_t days() const { return days_; }
    int year() const;
    unsigned month() const;
    unsigned day() const;

    /// ISO 8601 "YYYY-MM-DD".
    std::string to_string() const;

    Date operator+(std::int64_t n) const { return from_days(days_ + n); }
    std::int64_t operator-(const Date& other) const { return days_ - other.days_; }
    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

}  // namespace btcts
