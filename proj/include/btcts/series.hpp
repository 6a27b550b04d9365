#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "btcts/date.hpp"

namespace btcts {

/// Immutable daily time series: strictly increasing calendar dates paired
/// with finite values, plus a free-text unit label and the ordered list of
/// transforms that produced it. Calendar gaps are allowed; all models index
/// positionally.
class TimeSeries {
public:
    /// Validates on construction: strictly increasing timestamps, finite
    /// values, length >= 1. Throws DataError subclasses otherwise.
    TimeSeries(std::vector<Date> timestamps, std::vector<double> values,
               std::string unit = "", std::vector<std::string> lineage = {});

    std::size_t size() const { return values_.size(); }
    double value(std::size_t i) const { return values_[i]; }
    const Date& timestamp(std::size_t i) const { return timestamps_[i]; }

    const std::vector<double>& values() const { return values_; }
    const std::vector<Date>& timestamps() const { return timestamps_; }
    const std::string& unit() const { return unit_; }
    const std::vector<std::string>& lineage() const { return lineage_; }

    Date first_date() const { return timestamps_.front(); }
    Date last_date() const { return timestamps_.back(); }

private:
    std::vector<Date> timestamps_;
    std::vector<double> values_;
    std::string unit_;
    std::vector<std::string> lineage_;
};

/// Chronological train/test split.
struct SplitPair {
    TimeSeries train;
    TimeSeries test;
    double fraction;
};

/// Elementwise natural log. All values must be strictly positive.
TimeSeries log_transform(const TimeSeries& series);

/// First difference of the log series: ln(P_t) - ln(P_{t-1}), aligned to
/// the later timestamp. Output is one shorter than the input.
TimeSeries log_returns(const TimeSeries& series);

/// Applies (1-B)^d (1-B^s)^D. Output length = input length - d - D*s.
TimeSeries difference(const TimeSeries& series, unsigned d, unsigned D, unsigned s);

/// Chronological split with train length = floor(fraction * n). No shuffling.
SplitPair split(const TimeSeries& series, double fraction);

}  // namespace btcts
