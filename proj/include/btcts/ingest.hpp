#pragma once

#include <map>
#include <string>
#include <vector>

#include "btcts/evaluate.hpp"
#include "btcts/series.hpp"

namespace btcts {

struct IngestConfig {
    std::string input_path;
    std::string date_column = "date";
    std::string price_column = "priceUSD";
    double min_price = 100.0;
    std::vector<std::string> extra_columns;  // exogenous regressors to carry along
};

struct IngestResult {
    TimeSeries prices;  // sorted by date, rows below min_price dropped
    std::map<std::string, std::vector<double>> extras;  // aligned with prices
    std::size_t rows_before_filter = 0;
    std::size_t rows_after_filter = 0;
    double min_price = 0.0;

    DatasetFingerprint fingerprint(double split_fraction) const;
};

/// Load, sort and filter the price CSV. Rows whose price is below
/// min_price are dropped together with their extra-column values.
IngestResult ingest(const IngestConfig& config);

}  // namespace btcts
