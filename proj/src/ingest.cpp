#include "btcts/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "btcts/csv.hpp"
#include "btcts/errors.hpp"

namespace btcts {

namespace {

double parse_number(const std::string& field, std::size_t line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw UnparseableRow(line, "not a finite number: '" + field + "'");
    return v;
}

}  // namespace

DatasetFingerprint IngestResult::fingerprint(double split_fraction) const {
    DatasetFingerprint fp;
    fp.rows_before_filter = rows_before_filter;
    fp.rows_after_filter = rows_after_filter;
    fp.first_date = prices.first_date().to_string();
    fp.last_date = prices.last_date().to_string();
    fp.min_price = min_price;
    fp.split_fraction = split_fraction;
    return fp;
}

IngestResult ingest(const IngestConfig& config) {
    if (config.min_price < 0.0) throw ConfigError("min_price must be >= 0");
    CsvTable table = read_csv(config.input_path);
    if (table.rows.empty()) throw EmptyAfterFilter();

    const std::size_t date_col = table.column(config.date_column);
    const std::size_t price_col = table.column(config.price_column);
    std::vector<std::size_t> extra_cols;
    for (const std::string& name : config.extra_columns) extra_cols.push_back(table.column(name));

    struct Row {
        Date date;
        double price;
        std::vector<double> extras;
    };
    std::vector<Row> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& fields = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        Row row;
        try {
            row.date = Date::parse(fields[date_col]);
        } catch (const std::invalid_argument& ex) {
            throw UnparseableRow(line, std::string(ex.what()) + ": '" + fields[date_col] + "'");
        }
        row.price = parse_number(fields[price_col], line);
        for (std::size_t c : extra_cols) row.extras.push_back(parse_number(fields[c], line));
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });

    const std::size_t before = rows.size();
    std::erase_if(rows, [&](const Row& r) { return r.price < config.min_price; });
    if (rows.empty()) throw EmptyAfterFilter();

    std::vector<Date> dates;
    std::vector<double> prices;
    dates.reserve(rows.size());
    prices.reserve(rows.size());
    std::map<std::string, std::vector<double>> extras;
    for (const auto& name : config.extra_columns) extras[name].reserve(rows.size());
    for (const Row& r : rows) {
        dates.push_back(r.date);
        prices.push_back(r.price);
        for (std::size_t j = 0; j < config.extra_columns.size(); ++j)
            extras[config.extra_columns[j]].push_back(r.extras[j]);
    }

    IngestResult result{
        TimeSeries(std::move(dates), std::move(prices), "USD", {"ingest"}),
        std::move(extras), before, rows.size(), config.min_price};
    return result;
}

}  // namespace btcts
