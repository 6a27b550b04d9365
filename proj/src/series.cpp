#include "btcts/series.hpp"

#include <cmath>
#include <utility>

#include "btcts/errors.hpp"

namespace btcts {

TimeSeries::TimeSeries(std::vector<Date> timestamps, std::vector<double> values,
                       std::string unit, std::vector<std::string> lineage)
    : timestamps_(std::move(timestamps)),
      values_(std::move(values)),
      unit_(std::move(unit)),
      lineage_(std::move(lineage)) {
    if (values_.empty()) {
        throw SeriesTooShort("a time series needs at least one observation");
    }
    if (timestamps_.size() != values_.size()) {
        throw DimensionMismatch("timestamp and value counts differ");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("non-finite value at index " + std::to_string(i));
        }
    }
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
        if (!(timestamps_[i - 1] < timestamps_[i])) {
            throw DataError("timestamps not strictly increasing at index " + std::to_string(i));
        }
    }
}

TimeSeries log_transform(const TimeSeries& series) {
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series.value(i) > 0.0)) throw NonPositiveValue(i);
        out[i] = std::log(series.value(i));
    }
    auto lineage = series.lineage();
    lineage.push_back("log");
    return TimeSeries(series.timestamps(), std::move(out), "log-" + series.unit(),
                      std::move(lineage));
}

TimeSeries log_returns(const TimeSeries& series) {
    if (series.size() < 2) {
        throw SeriesTooShort("log returns need at least two observations");
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series.value(i) > 0.0)) throw NonPositiveValue(i);
    }
    std::vector<double> out(series.size() - 1);
    std::vector<Date> stamps(series.timestamps().begin() + 1, series.timestamps().end());
    for (std::size_t i = 1; i < series.size(); ++i) {
        out[i - 1] = std::log(series.value(i)) - std::log(series.value(i - 1));
    }
    auto lineage = series.lineage();
    lineage.push_back("log_return(consumed=1)");
    return TimeSeries(std::move(stamps), std::move(out), "log-return", std::move(lineage));
}

TimeSeries difference(const TimeSeries& series, unsigned d, unsigned D, unsigned s) {
    if (s == 0) throw ConfigError("seasonal period must be positive");
    const std::size_t consumed = d + static_cast<std::size_t>(D) * s;
    if (series.size() <= consumed) {
        throw SeriesTooShort("differencing consumes the whole series");
    }
    std::vector<double> v = series.values();
    for (unsigned k = 0; k < d; ++k) {
        std::vector<double> next(v.size() - 1);
        for (std::size_t i = 1; i < v.size(); ++i) next[i - 1] = v[i] - v[i - 1];
        v = std::move(next);
    }
    for (unsigned k = 0; k < D; ++k) {
        std::vector<double> next(v.size() - s);
        for (std::size_t i = s; i < v.size(); ++i) next[i - s] = v[i] - v[i - s];
        v = std::move(next);
    }
    std::vector<Date> stamps(series.timestamps().begin() + static_cast<std::ptrdiff_t>(consumed),
                             series.timestamps().end());
    auto lineage = series.lineage();
    if (consumed > 0) {
        lineage.push_back("diff(d=" + std::to_string(d) + ",D=" + std::to_string(D) +
                          ",s=" + std::to_string(s) + ",consumed=" + std::to_string(consumed) +
                          ")");
    }
    return TimeSeries(std::move(stamps), std::move(v), series.unit(), std::move(lineage));
}

SplitPair split(const TimeSeries& series, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw InvalidFraction(fraction);
    if (series.size() < 2) throw SeriesTooShort("cannot split fewer than two observations");
    const auto n = series.size();
    auto n_train = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n) {
        throw InvalidFraction(fraction);
    }
    auto lineage_train = series.lineage();
    lineage_train.push_back("split_train(fraction=" + std::to_string(fraction) + ")");
    auto lineage_test = series.lineage();
    lineage_test.push_back("split_test(fraction=" + std::to_string(fraction) + ")");

    TimeSeries train(
        std::vector<Date>(series.timestamps().begin(), series.timestamps().begin() + n_train),
        std::vector<double>(series.values().begin(), series.values().begin() + n_train),
        series.unit(), std::move(lineage_train));
    TimeSeries test(
        std::vector<Date>(series.timestamps().begin() + n_train, series.timestamps().end()),
        std::vector<double>(series.values().begin() + n_train, series.values().end()),
        series.unit(), std::move(lineage_test));
    return SplitPair{std::move(train), std::move(test), fraction};
}

}  // namespace btcts
