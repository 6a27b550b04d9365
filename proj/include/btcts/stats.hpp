#pragma once

#include <cstddef>
#include <vector>

#include "btcts/series.hpp"

namespace btcts {

/// Column-major design matrix for regressions. Columns are regressors
/// (including any intercept column the caller adds).
struct DesignMatrix {
    std::size_t rows = 0;
    std::vector<std::vector<double>> columns;

    DesignMatrix() = default;
    explicit DesignMatrix(std::size_t n) : rows(n) {}

    std::size_t cols() const { return columns.size(); }
    void add_column(std::vector<double> col);
    static DesignMatrix with_intercept(std::size_t n) {
        DesignMatrix x(n);
        x.add_column(std::vector<double>(n, 1.0));
        return x;
    }
};

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> stderrors;
    std::vector<double> residuals;
    std::vector<double> fitted;
    double r_squared = 0.0;
    double sigma2 = 0.0;  // residual variance, RSS / (n - k)
    std::size_t n = 0;
    std::size_t k = 0;
};

/// Least squares via Householder QR. Throws RankDeficient when a diagonal
/// of R collapses, DimensionMismatch on shape errors.
OlsFit ols(const std::vector<double>& y, const DesignMatrix& X);

/// One correlogram entry. confidence_band is the white-noise band 1.96/sqrt(n).
struct CorrelogramPoint {
    unsigned lag;
    double value;
    double confidence_band;
};

/// Autocorrelations for lags 0..max_lag using the biased autocovariance
/// (divisor n), which keeps the sequence positive semidefinite.
std::vector<CorrelogramPoint> acf(const TimeSeries& series, unsigned max_lag);

/// Partial autocorrelations for lags 1..max_lag via Durbin-Levinson on the
/// acf output. Requires max_lag < n/2.
std::vector<CorrelogramPoint> pacf(const TimeSeries& series, unsigned max_lag);

/// Standard normal CDF, accurate to ~1e-15 (complementary error function).
double norm_cdf(double z);

/// Standard normal quantile function (inverse of norm_cdf).
double norm_ppf(double p);

/// Chi-squared survival function P(X > x) with df degrees of freedom,
/// via the regularized incomplete gamma function.
double chi2_sf(double x, unsigned df);

}  // namespace btcts
