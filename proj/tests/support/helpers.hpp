#pragma once

// Shared helpers for the test suites: fixture loading, series construction,
// and small numeric utilities used by the independent reference
// implementations the suites compare against.

#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "btcts/series.hpp"

namespace testutil {

inline std::vector<double> load_fixture(const std::string& name) {
    const std::string path = std::string(BTCTS_FIXTURE_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture: " + path);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    return v;
}

inline btcts::TimeSeries make_series(const std::vector<double>& values,
                                     std::int64_t start_day = 0) {
    std::vector<btcts::Date> dates;
    dates.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        dates.push_back(btcts::Date::from_days(start_day + static_cast<std::int64_t>(i)));
    return btcts::TimeSeries(std::move(dates), values);
}

inline std::vector<double> demean(std::vector<double> v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) x -= m;
    return v;
}

inline double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace testutil
