#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "btcts/series.hpp"
#include "btcts/stats.hpp"

namespace btcts {

enum class AdfRegression { constant, constant_trend, none };

struct AdfResult {
    double statistic;
    double p_value;
    unsigned lags_used;
    AdfRegression regression_kind;
};

/// Augmented Dickey-Fuller unit-root test. The lag order of the augmenting
/// difference terms is chosen by AIC over 0..max_lags; p-values use the
/// MacKinnon response-surface approximation, clamped to [1e-16, 1-1e-16].
namespace detail {
/// Approximate p-value for an ADF t-statistic via the MacKinnon (1994)
/// regression-surface polynomials, clamped to (0, 1).
double mackinnon_pvalue(double tau, AdfRegression kind);
}  // namespace detail

AdfResult adf_test(const TimeSeries& series, unsigned max_lags,
                   AdfRegression kind = AdfRegression::constant);

struct ArchLmResult {
    double lm_statistic;
    double p_value;
    unsigned lags;
};

/// Engle's ARCH-LM test: regress e_t^2 on a constant and its own lags;
/// LM = n * R^2, p-value from chi2 with `lags` degrees of freedom.
ArchLmResult arch_lm_test(const std::vector<double>& residuals, unsigned lags);

/// Durbin-Watson statistic, sum of squared residual first differences over
/// the residual sum of squares. Always in [0, 4].
double durbin_watson(const std::vector<double>& residuals);

struct CochraneOrcuttResult {
    double rho;
    unsigned iterations;
    bool converged;
    double dw_before;
    double dw_after;
    OlsFit original_fit;
    OlsFit transformed_fit;
};

/// Iterative Cochrane-Orcutt AR(1) correction (classic variant: the first
/// observation is dropped from the quasi-differenced regression). When
/// forced_rho is given no iteration happens; forced_rho = 0 leaves the data
/// untouched and reproduces the plain OLS fit.
CochraneOrcuttResult cochrane_orcutt(const std::vector<double>& y, const DesignMatrix& X,
                                     double tol = 1e-6, unsigned max_iter = 50,
                                     std::optional<double> forced_rho = std::nullopt);

struct HistogramBin {
    double lower;
    double upper;
    std::size_t count;
};

struct QqPoint {
    double theoretical;  // standard normal quantile at (i - 0.5)/n
    double sample;       // i-th order statistic of the standardized series
};

struct DistributionShape {
    std::vector<HistogramBin> histogram;
    std::vector<QqPoint> qq;
    double mean;
    double stddev;
};

/// Equal-width histogram over [min, max] plus normal QQ pairs of the
/// standardized series (so a standard normal sample tracks the identity
/// line and heavy tails show as departures from it).
DistributionShape distribution_shape(const TimeSeries& series, unsigned bins);

}  // namespace btcts
