#include "btcts/date.hpp"

#include <cstdio>
#include <stdexcept>

namespace btcts {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097LL + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yr = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

bool valid_ymd(int y, unsigned m, unsigned d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const unsigned len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    unsigned max_d = len[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) max_d = 29;
    return d <= max_d;
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
    if (!valid_ymd(year, month, day)) {
        throw std::invalid_argument("invalid calendar date");
    }
    days_ = days_from_civil(year, month, day);
}

Date Date::parse(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char trail = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &trail) == 3) {
        return Date(y, m, d);
    }
    if (std::sscanf(text.c_str(), "%u/%u/%d%c", &m, &d, &y, &trail) == 3) {
        return Date(y, m, d);
    }
    throw std::invalid_argument("unparseable date: '" + text + "'");
}

int Date::year() const {
    int y;
    unsigned m, d;
    civil_from_days(days_, y, m, d);
    return y;
}

unsigned Date::month() const {
    int y;
    unsigned m, d;
    civil_from_days(days_, y, m, d);
    return m;
}

unsigned Date::day() const {
    int y;
    unsigned m, d;
    civil_from_days(days_, y, m, d);
    return d;
}

std::string Date::to_string() const {
    int y;
    unsigned m, d;
    civil_from_days(days_, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

}  // namespace btcts
