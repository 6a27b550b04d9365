#include "btcts/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "btcts/errors.hpp"

namespace btcts {

void DesignMatrix::add_column(std::vector<double> col) {
    if (col.size() != rows) {
        throw DimensionMismatch("design column length does not match row count");
    }
    columns.push_back(std::move(col));
}

namespace {

bool is_constant_column(const std::vector<double>& col) {
    return std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); }) &&
           col.front() != 0.0;
}

}  // namespace

OlsFit ols(const std::vector<double>& y, const DesignMatrix& X) {
    const std::size_t n = y.size();
    const std::size_t k = X.cols();
    if (X.rows != n) throw DimensionMismatch("y length does not match design rows");
    if (k == 0) throw DimensionMismatch("design matrix has no columns");
    if (n <= k) throw DimensionMismatch("need more observations than regressors");

    Eigen::MatrixXd A(n, k);
    Eigen::VectorXd b(n);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) A(i, j) = X.columns[j][i];
    }
    for (std::size_t i = 0; i < n; ++i) b(i) = y[i];

    // Scale columns to unit norm so wildly different regressor magnitudes
    // (an intercept next to a 1e14-scale level series) neither trip the rank
    // test nor degrade the normal-equation solve; coefficients and standard
    // errors are mapped back afterwards.
    Eigen::VectorXd scale(k);
    for (std::size_t j = 0; j < k; ++j) {
        scale(j) = A.col(j).norm();
        if (!(scale(j) > 0.0)) throw RankDeficient();
        A.col(j) /= scale(j);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-10);
    if (static_cast<std::size_t>(qr.rank()) < k) throw RankDeficient();

    Eigen::VectorXd beta_scaled = qr.solve(b);
    Eigen::VectorXd fitted = A * beta_scaled;
    Eigen::VectorXd resid = b - fitted;
    Eigen::VectorXd beta = beta_scaled.cwiseQuotient(scale);

    const double rss = resid.squaredNorm();
    const double sigma2 = rss / static_cast<double>(n - k);

    // (X'X)^{-1} diagonal for the coefficient standard errors, computed on
    // the scaled system and mapped back through the column scales.
    Eigen::MatrixXd xtx_inv =
        (A.transpose() * A).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) xtx_inv(i, j) /= scale(i) * scale(j);

    OlsFit fit;
    fit.n = n;
    fit.k = k;
    fit.sigma2 = sigma2;
    fit.coefficients.resize(k);
    fit.stderrors.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        fit.coefficients[j] = beta(j);
        fit.stderrors[j] = std::sqrt(std::max(0.0, sigma2 * xtx_inv(j, j)));
    }
    fit.residuals.assign(resid.data(), resid.data() + n);
    fit.fitted.assign(fitted.data(), fitted.data() + n);

    // Centered total sum of squares when an intercept column is present,
    // uncentered otherwise; both keep R^2 inside [0,1].
    bool has_intercept = std::any_of(X.columns.begin(), X.columns.end(), is_constant_column);
    double tss = 0.0;
    if (has_intercept) {
        const double mean = b.mean();
        tss = (b.array() - mean).square().sum();
    } else {
        tss = b.squaredNorm();
    }
    fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 0.0;
    fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    return fit;
}

std::vector<CorrelogramPoint> acf(const TimeSeries& series, unsigned max_lag) {
    const std::size_t n = series.size();
    if (max_lag >= n) throw LagTooLarge("acf max_lag must be below the series length");
    const auto& x = series.values();
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);

    double gamma0 = 0.0;
    for (double v : x) gamma0 += (v - mean) * (v - mean);
    gamma0 /= static_cast<double>(n);

    const double band = 1.96 / std::sqrt(static_cast<double>(n));
    std::vector<CorrelogramPoint> out;
    out.reserve(max_lag + 1);
    out.push_back({0, 1.0, band});
    if (gamma0 == 0.0) {
        // A constant series has no autocorrelation structure to report.
        for (unsigned lag = 1; lag <= max_lag; ++lag) out.push_back({lag, 0.0, band});
        return out;
    }
    for (unsigned lag = 1; lag <= max_lag; ++lag) {
        double g = 0.0;
        for (std::size_t t = lag; t < n; ++t) g += (x[t] - mean) * (x[t - lag] - mean);
        g /= static_cast<double>(n);
        out.push_back({lag, g / gamma0, band});
    }
    return out;
}

std::vector<CorrelogramPoint> pacf(const TimeSeries& series, unsigned max_lag) {
    const std::size_t n = series.size();
    if (max_lag == 0 || 2 * static_cast<std::size_t>(max_lag) >= n) {
        throw LagTooLarge("pacf max_lag must be below half the series length");
    }
    auto rho = acf(series, max_lag);
    const double band = 1.96 / std::sqrt(static_cast<double>(n));

    // Durbin-Levinson: phi[k][k] is the partial autocorrelation at lag k.
    std::vector<double> phi_prev(max_lag + 1, 0.0), phi_cur(max_lag + 1, 0.0);
    std::vector<CorrelogramPoint> out;
    out.reserve(max_lag);
    double err = 1.0;  // prediction error variance, in units of gamma0
    for (unsigned k = 1; k <= max_lag; ++k) {
        double num = rho[k].value;
        for (unsigned j = 1; j < k; ++j) num -= phi_prev[j] * rho[k - j].value;
        if (err < 1e-12) {
            throw NumericalBreakdown("Toeplitz system near singular in Durbin-Levinson");
        }
        const double phi_kk = num / err;
        phi_cur[k] = phi_kk;
        for (unsigned j = 1; j < k; ++j) phi_cur[j] = phi_prev[j] - phi_kk * phi_prev[k - j];
        err *= (1.0 - phi_kk * phi_kk);
        std::swap(phi_prev, phi_cur);
        out.push_back({k, phi_kk, band});
    }
    return out;
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double norm_ppf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ConfigError("norm_ppf requires p in (0,1)");
    }
    // Acklam's rational approximation, then one Halley refinement against
    // norm_cdf to push the error below 1e-13.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = norm_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

namespace {

// Regularized lower incomplete gamma P(a,x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by Lentz continued fraction (x >= a+1).
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_sf(double x, unsigned df) {
    if (df == 0) throw ConfigError("chi2_sf requires df >= 1");
    if (x < 0.0) throw ConfigError("chi2_sf requires x >= 0");
    if (x == 0.0) return 1.0;
    const double a = 0.5 * static_cast<double>(df);
    const double xs = 0.5 * x;
    if (xs < a + 1.0) {
        return 1.0 - gamma_p_series(a, xs);
    }
    return gamma_q_contfrac(a, xs);
}

}  // namespace btcts
