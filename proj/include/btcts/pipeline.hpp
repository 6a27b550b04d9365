#pragma once

#include <cstdint>
#include <string>

#include "btcts/evaluate.hpp"
#include "btcts/ingest.hpp"
#include "btcts/json_writer.hpp"
#include "btcts/sarima.hpp"

namespace btcts {

enum class ModelSelection { arima, sarima, garch, egarch, all };

struct PipelineConfig {
    double split_fraction = 0.9;
    SarimaSpec arima_order{1, 1, 1, 0, 0, 0, 1};
    SarimaSpec sarima_order{1, 1, 1, 1, 1, 1, 7};
    ForecastScheme forecast_scheme = ForecastScheme::rolling_one_step;
    unsigned acf_lags = 40;
    unsigned arch_lags = 5;
    unsigned adf_max_lags = 20;
    unsigned histogram_bins = 50;
    std::uint64_t seed = 42;  // recorded in the report; no pipeline step draws from it
    ModelSelection models = ModelSelection::all;
};

/// Full run: ingest -> diagnose -> fit (concurrently) -> forecast ->
/// evaluate. Writes report.json plus the plot-data CSVs into out_dir.
/// All numeric output uses fixed 10-significant-digit formatting and no
/// wall-clock data, so identical inputs give byte-identical files. On
/// failure every partially written output is removed before the error
/// propagates.
void run_pipeline(const IngestConfig& ingest_config, const PipelineConfig& config,
                  const std::string& out_dir);

/// Diagnostics-only run: ADF and ARCH-LM on log returns plus the three
/// autocorrelation-corrected regressions when the difficulty/hashrate/fee
/// columns are configured. Returns the report as JSON.
Json diagnose(const IngestConfig& ingest_config, const PipelineConfig& config);

}  // namespace btcts
