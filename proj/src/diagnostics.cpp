#include "btcts/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "btcts/errors.hpp"

namespace btcts {

namespace {

constexpr double kPClampLo = 1e-16;
constexpr double kPClampHi = 1.0 - 1e-16;

// MacKinnon (1994/2010) response-surface coefficients for the tau statistic
// with one estimated unit root. Rows: {none, constant, constant+trend}.
// p = Phi(c0 + c1*tau + c2*tau^2 [+ c3*tau^3]), small-p polynomial below
// tau_star, large-p polynomial above, hard 0/1 outside [tau_min, tau_max].
struct MacKinnonRow {
    double tau_star, tau_min, tau_max;
    double smallp[3];
    double largep[4];
};

const MacKinnonRow kMacKinnon[3] = {
    // none
    {-1.04, -19.04, std::numeric_limits<double>::infinity(),
     {0.6344, 1.2378, 0.032496},
     {0.4797, 0.93557, -0.06999, 0.033066}},
    // constant
    {-1.61, -18.83, 2.74,
     {2.1659, 1.4412, 0.038269},
     {1.7339, 0.93202, -0.12745, -0.010368}},
    // constant + trend
    {-2.89, -16.18, 0.7,
     {3.2512, 1.6047, 0.049588},
     {2.5261, 0.61654, -0.37956, -0.060285}},
};

}  // namespace

namespace detail {

double mackinnon_pvalue(double tau, AdfRegression kind) {
    int row;
    switch (kind) {
        case AdfRegression::none: row = 0; break;
        case AdfRegression::constant: row = 1; break;
        default: row = 2; break;
    }
    const MacKinnonRow& m = kMacKinnon[row];
    double p;
    if (tau > m.tau_max) {
        p = 1.0;
    } else if (tau < m.tau_min) {
        p = 0.0;
    } else if (tau <= m.tau_star) {
        p = norm_cdf(m.smallp[0] + m.smallp[1] * tau + m.smallp[2] * tau * tau);
    } else {
        p = norm_cdf(m.largep[0] + m.largep[1] * tau + m.largep[2] * tau * tau +
                     m.largep[3] * tau * tau * tau);
    }
    return std::clamp(p, kPClampLo, kPClampHi);
}

}  // namespace detail

namespace {

// Dickey-Fuller regression for a given augmentation order p, over the
// common sample starting at offset `start` (start >= p + 1).
struct DfRegression {
    OlsFit fit;
    std::size_t coef_index;  // position of the level coefficient
    double aic;
};

DfRegression df_regression(const std::vector<double>& y, unsigned p, std::size_t start,
                           AdfRegression kind) {
    const std::size_t n = y.size();
    const std::size_t n_obs = n - start;
    DesignMatrix X(n_obs);
    std::vector<double> dy(n_obs);
    for (std::size_t t = start; t < n; ++t) dy[t - start] = y[t] - y[t - 1];

    std::size_t coef_index = 0;
    if (kind != AdfRegression::none) {
        X.add_column(std::vector<double>(n_obs, 1.0));
        coef_index = 1;
    }
    if (kind == AdfRegression::constant_trend) {
        std::vector<double> trend(n_obs);
        for (std::size_t i = 0; i < n_obs; ++i) trend[i] = static_cast<double>(start + i);
        X.add_column(std::move(trend));
        coef_index = 2;
    }
    std::vector<double> level(n_obs);
    for (std::size_t t = start; t < n; ++t) level[t - start] = y[t - 1];
    X.add_column(std::move(level));
    for (unsigned lag = 1; lag <= p; ++lag) {
        std::vector<double> dlag(n_obs);
        for (std::size_t t = start; t < n; ++t) dlag[t - start] = y[t - lag] - y[t - lag - 1];
        X.add_column(std::move(dlag));
    }

    OlsFit fit = ols(dy, X);
    double rss = 0.0;
    for (double e : fit.residuals) rss += e * e;
    const double nn = static_cast<double>(n_obs);
    const double aic = nn * std::log(rss / nn) + 2.0 * static_cast<double>(fit.k);
    return {std::move(fit), coef_index, aic};
}

}  // namespace

AdfResult adf_test(const TimeSeries& series, unsigned max_lags, AdfRegression kind) {
    const std::size_t n = series.size();
    if (n <= static_cast<std::size_t>(max_lags) + 10) {
        throw SeriesTooShort("ADF test needs more than max_lags + 10 observations");
    }
    const auto& y = series.values();

    // Lag order by AIC over the common sample (all candidates see the same
    // observations), then refit with the winner using its full sample.
    const std::size_t common_start = static_cast<std::size_t>(max_lags) + 1;
    unsigned best_p = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (unsigned p = 0; p <= max_lags; ++p) {
        const double a = df_regression(y, p, common_start, kind).aic;
        if (a < best_aic) {
            best_aic = a;
            best_p = p;
        }
    }
    DfRegression reg = df_regression(y, best_p, static_cast<std::size_t>(best_p) + 1, kind);
    const double gamma = reg.fit.coefficients[reg.coef_index];
    const double se = reg.fit.stderrors[reg.coef_index];
    if (!(se > 0.0)) throw NumericalBreakdown("zero standard error in ADF regression");
    const double tau = gamma / se;
    return AdfResult{tau, detail::mackinnon_pvalue(tau, kind), best_p, kind};
}

ArchLmResult arch_lm_test(const std::vector<double>& residuals, unsigned lags) {
    if (lags == 0) throw ConfigError("ARCH-LM needs at least one lag");
    if (residuals.size() <= static_cast<std::size_t>(lags) + 10) {
        throw SeriesTooShort("ARCH-LM test needs more than lags + 10 observations");
    }
    const std::size_t n = residuals.size();
    std::vector<double> e2(n);
    for (std::size_t i = 0; i < n; ++i) e2[i] = residuals[i] * residuals[i];

    const std::size_t n_obs = n - lags;
    const double mean =
        std::accumulate(e2.begin() + lags, e2.end(), 0.0) / static_cast<double>(n_obs);
    double var = 0.0;
    for (std::size_t t = lags; t < n; ++t) var += (e2[t] - mean) * (e2[t] - mean);
    if (var == 0.0) {
        // Constant squared residuals: nothing to explain.
        return ArchLmResult{0.0, 1.0, lags};
    }

    std::vector<double> dep(e2.begin() + lags, e2.end());
    DesignMatrix X = DesignMatrix::with_intercept(n_obs);
    for (unsigned lag = 1; lag <= lags; ++lag) {
        std::vector<double> col(n_obs);
        for (std::size_t t = lags; t < n; ++t) col[t - lags] = e2[t - lag];
        X.add_column(std::move(col));
    }
    OlsFit fit;
    try {
        fit = ols(dep, X);
    } catch (const RankDeficient&) {
        // Lagged squared residuals that cannot span a full-rank design are
        // (numerically) constant: same conclusion as the var == 0 branch.
        return ArchLmResult{0.0, 1.0, lags};
    }
    const double lm = static_cast<double>(n_obs) * fit.r_squared;
    return ArchLmResult{lm, std::clamp(chi2_sf(lm, lags), kPClampLo, 1.0), lags};
}

double durbin_watson(const std::vector<double>& residuals) {
    if (residuals.size() < 2) throw SeriesTooShort("Durbin-Watson needs at least two residuals");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        den += residuals[t] * residuals[t];
        if (t > 0) {
            const double d = residuals[t] - residuals[t - 1];
            num += d * d;
        }
    }
    if (den == 0.0) throw AllZeroResiduals();
    return num / den;
}

CochraneOrcuttResult cochrane_orcutt(const std::vector<double>& y, const DesignMatrix& X,
                                     double tol, unsigned max_iter,
                                     std::optional<double> forced_rho) {
    if (max_iter == 0) throw ConfigError("cochrane_orcutt needs max_iter >= 1");
    OlsFit base = ols(y, X);
    const double dw_before = durbin_watson(base.residuals);
    const std::size_t n = y.size();

    auto estimate_rho = [](const std::vector<double>& e) {
        double num = 0.0, den = 0.0;
        for (std::size_t t = 1; t < e.size(); ++t) {
            num += e[t] * e[t - 1];
            den += e[t - 1] * e[t - 1];
        }
        if (den == 0.0) throw AllZeroResiduals();
        return num / den;
    };

    auto quasi_difference = [&](double rho, std::vector<double>& y_star, DesignMatrix& X_star) {
        y_star.resize(n - 1);
        X_star = DesignMatrix(n - 1);
        for (std::size_t t = 1; t < n; ++t) y_star[t - 1] = y[t] - rho * y[t - 1];
        for (const auto& col : X.columns) {
            std::vector<double> c(n - 1);
            for (std::size_t t = 1; t < n; ++t) c[t - 1] = col[t] - rho * col[t - 1];
            X_star.add_column(std::move(c));
        }
    };

    if (forced_rho.has_value()) {
        const double rho = *forced_rho;
        if (std::abs(rho) >= 1.0) throw RhoOutOfRange(rho);
        if (rho == 0.0) {
            // Identity transform: the plain OLS fit on the full sample.
            return CochraneOrcuttResult{0.0, 0, true, dw_before, dw_before, base, base};
        }
        std::vector<double> y_star;
        DesignMatrix X_star;
        quasi_difference(rho, y_star, X_star);
        OlsFit tfit = ols(y_star, X_star);
        const double dw_after = durbin_watson(tfit.residuals);
        return CochraneOrcuttResult{rho, 0, true, dw_before, dw_after, base, std::move(tfit)};
    }

    // Iterate: rho from the original-scale residuals under the current
    // coefficients, refit on quasi-differenced data, until rho settles.
    std::vector<double> beta = base.coefficients;
    double rho = estimate_rho(base.residuals);
    if (std::abs(rho) >= 1.0) throw RhoOutOfRange(rho);
    bool converged = false;
    unsigned iter = 0;
    OlsFit tfit;
    for (; iter < max_iter; ++iter) {
        std::vector<double> y_star;
        DesignMatrix X_star;
        quasi_difference(rho, y_star, X_star);
        tfit = ols(y_star, X_star);

        // Residuals on the original scale under the new coefficients.
        std::vector<double> e(n);
        for (std::size_t t = 0; t < n; ++t) {
            double fit_t = 0.0;
            for (std::size_t j = 0; j < X.cols(); ++j) fit_t += tfit.coefficients[j] * X.columns[j][t];
            e[t] = y[t] - fit_t;
        }
        const double rho_new = estimate_rho(e);
        if (std::abs(rho_new) >= 1.0) throw RhoOutOfRange(rho_new);
        const double delta = std::abs(rho_new - rho);
        rho = rho_new;
        if (delta < tol) {
            converged = true;
            ++iter;
            break;
        }
    }
    const double dw_after = durbin_watson(tfit.residuals);
    return CochraneOrcuttResult{rho, iter, converged, dw_before, dw_after, std::move(base),
                                std::move(tfit)};
}

DistributionShape distribution_shape(const TimeSeries& series, unsigned bins) {
    if (bins == 0) throw ConfigError("histogram needs at least one bin");
    const std::size_t n = series.size();
    if (n < 10) throw SeriesTooShort("distribution shape needs at least 10 observations");
    const auto& x = series.values();

    const auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *mn_it, hi = *mx_it;
    const double width = (hi - lo) / static_cast<double>(bins);

    DistributionShape shape;
    shape.histogram.resize(bins);
    for (unsigned b = 0; b < bins; ++b) {
        shape.histogram[b] = {lo + b * width, lo + (b + 1) * width, 0};
    }
    for (double v : x) {
        std::size_t b = width > 0.0
                            ? std::min<std::size_t>(bins - 1,
                                                    static_cast<std::size_t>((v - lo) / width))
                            : 0;
        ++shape.histogram[b].count;
    }

    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    shape.mean = mean;
    shape.stddev = sd;

    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    shape.qq.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double sample = sd > 0.0 ? (sorted[i] - mean) / sd : 0.0;
        shape.qq[i] = {norm_ppf(p), sample};
    }
    return shape;
}

}  // namespace btcts
