#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "btcts/sarima.hpp"

namespace btcts {

/// Mean absolute error over a forecast trace.
double mae(const ForecastTrace& trace);

/// Root mean squared error over a forecast trace.
double rmse(const ForecastTrace& trace);

/// Akaike information criterion, 2k - 2*loglik.
double aic(double loglik, std::size_t k);

/// Bayesian information criterion, k*ln(n) - 2*loglik.
double bic(double loglik, std::size_t k, std::size_t n);

/// Identity of the data a model was estimated and evaluated on. Models can
/// only be compared when these match exactly.
struct DatasetFingerprint {
    std::size_t rows_before_filter = 0;
    std::size_t rows_after_filter = 0;
    std::string first_date;
    std::string last_date;
    double min_price = 0.0;
    double split_fraction = 0.0;

    bool operator==(const DatasetFingerprint&) const = default;
};

/// One model's contribution to the comparison. Price-forecasting models
/// carry a trace (for MAE/RMSE); volatility models leave it null and are
/// ranked by information criteria instead.
struct ModelResult {
    std::string name;
    std::string group;  // "price" or "volatility"
    double loglik = 0.0;
    std::size_t k = 0;      // parameter count entering AIC/BIC
    std::size_t n_obs = 0;  // observation count entering BIC
    bool converged = false;
    std::string scheme;  // forecast scheme label, empty for volatility models
    const ForecastTrace* trace = nullptr;
    DatasetFingerprint fingerprint;
};

struct ModelEntry {
    std::string name;
    std::string group;
    std::string scheme;
    double mae = 0.0;  // NaN when the model has no forecast trace
    double rmse = 0.0;
    double loglik = 0.0;
    std::size_t k = 0;
    std::size_t n_obs = 0;
    double aic = 0.0;
    double bic = 0.0;
    bool converged = false;
};

/// Best-model flag for one metric; `winners` holds every tied name.
struct MetricFlag {
    std::string metric;
    std::vector<std::string> winners;
    bool tie = false;
};

struct AdfSummary {
    double statistic = 0.0;
    double p_value = 0.0;
    unsigned lags = 0;
};

struct ArchSummary {
    double lm_statistic = 0.0;
    double p_value = 0.0;
    unsigned lags = 0;
};

/// One autocorrelation-corrected regression row: Durbin-Watson before and
/// after the AR(1) correction.
struct DwRow {
    std::string name;
    double dw_before = 0.0;
    double dw_after = 0.0;
    double rho = 0.0;
    double r_squared = 0.0;  // of the original regression
    bool converged = false;
};

struct DiagnosticsSummary {
    std::optional<AdfSummary> adf_returns;
    std::optional<ArchSummary> arch_returns;
    std::vector<DwRow> dw_rows;
};

struct EvaluationReport {
    std::vector<ModelEntry> models;  // sorted by name
    std::vector<MetricFlag> best;    // one per metric with >= 2 contenders
    DiagnosticsSummary diagnostics;  // filled by the pipeline
    DatasetFingerprint fingerprint;
};

/// Assemble the comparison report. MAE/RMSE rank the "price" group and
/// AIC/BIC the "volatility" group; exact-equal metric values are reported
/// as a tie rather than broken arbitrarily. Output is sorted by model name
/// so the result does not depend on input order. Throws InconsistentSplit
/// when the models' dataset fingerprints differ.
EvaluationReport compare_models(const std::vector<ModelResult>& models);

}  // namespace btcts
