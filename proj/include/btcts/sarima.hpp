#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "btcts/series.hpp"

namespace btcts {

/// Model order for a multiplicative seasonal ARIMA(p,d,q)(P,D,Q,s).
/// s = 1 means a plain ARIMA, in which case P = D = Q = 0 is required.
struct SarimaSpec {
    unsigned p = 0, d = 0, q = 0;
    unsigned P = 0, D = 0, Q = 0;
    unsigned s = 1;

    void validate() const;
    std::size_t n_coefficients() const { return p + q + P + Q; }
    /// Observations consumed by differencing plus the AR presample span.
    std::size_t required_history() const;
};

struct SarimaFit {
    SarimaSpec spec;
    std::vector<double> ar;    // phi_1..phi_p
    std::vector<double> ma;    // theta_1..theta_q
    std::vector<double> sar;   // seasonal AR Phi_1..Phi_P (at lags s, 2s, ...)
    std::vector<double> sma;   // seasonal MA Theta_1..Theta_Q
    double mean = 0.0;         // sample mean, estimated only when d = D = 0
    double sigma2 = 0.0;       // innovation variance, CSS / n_effective
    double loglik = 0.0;       // Gaussian conditional log-likelihood
    std::vector<std::string> coef_names;  // ar1.., ma1.., sar{s}.., sma{s}..
    std::vector<double> stderrors;        // aligned with coef_names
    std::vector<double> p_values;         // two-sided normal
    std::vector<double> residuals;        // length n_effective
    std::size_t n_effective = 0;
    bool converged = false;

    /// Coefficients flattened in coef_names order.
    std::vector<double> coefficients() const;
};

enum class ForecastScheme { rolling_one_step, static_multi_step };

/// Aligned actual/predicted pairs over a test window, on the modeled
/// (undifferenced) scale.
struct ForecastTrace {
    std::vector<Date> timestamps;
    std::vector<double> actual;
    std::vector<double> predicted;
    ForecastScheme scheme = ForecastScheme::rolling_one_step;
    std::string target_label;
};

/// Conditional-sum-of-squares Gaussian ML fit. The series is differenced
/// per (d, D, s), the seasonal and non-seasonal polynomials are expanded
/// into one ARMA, and the CSS (pre-sample errors zero) is minimized by
/// Nelder-Mead over partial-autocorrelation-reparameterized coefficients,
/// so every iterate is stationary and invertible. Standard errors come
/// from the inverse numerical Hessian of the negative log-likelihood in
/// the original coefficient space. Differenced models carry no intercept;
/// a non-differenced model subtracts the sample mean first.
SarimaFit fit_sarima(const TimeSeries& train, const SarimaSpec& spec);

/// Multi-step mean forecast on the original scale: ARMA recursion on the
/// differenced series with future shocks zero, then integration of the
/// differences back out. history must contain at least required_history()
/// observations.
std::vector<double> forecast(const SarimaFit& fit, const TimeSeries& history, std::size_t horizon);

/// One-step-ahead forecasts across the test window with parameters frozen:
/// the forecast at test index t conditions on every actual observation
/// before t (train plus earlier test values), with no re-estimation.
ForecastTrace rolling_forecast(const SarimaFit& fit, const SplitPair& full);

/// Multi-step forecast of the whole test window from the end of train.
ForecastTrace static_forecast(const SarimaFit& fit, const SplitPair& full);

namespace detail {

/// Unconstrained reals -> coefficients of a stationary AR block, via
/// tanh to partial autocorrelations then the Levinson-Durbin recursion.
std::vector<double> ar_from_unconstrained(const std::vector<double>& u);
/// Inverse of ar_from_unconstrained (defined for stationary input).
std::vector<double> ar_to_unconstrained(const std::vector<double>& phi);
/// Same pair for invertible MA blocks (the recursion flips one sign).
std::vector<double> ma_from_unconstrained(const std::vector<double>& u);
std::vector<double> ma_to_unconstrained(const std::vector<double>& theta);

/// Expand (1 - sum a_i B^i)(1 - sum A_j B^{js}) into full lag coefficients
/// c_k with value(B) = 1 - sum c_k B^k; `negate` false gives the MA
/// convention (1 + sum ...)(1 + sum ...) = 1 + sum c_k B^k.
std::vector<double> expand_poly(const std::vector<double>& nonseasonal,
                                const std::vector<double>& seasonal, unsigned s, bool ma_sign);

/// Conditional-sum-of-squares innovations for an expanded ARMA over w.
/// Returned vector has the length of w; entries before the AR span (the
/// pre-sample) are zero.
std::vector<double> css_innovations(const std::vector<double>& w,
                                    const std::vector<double>& ar_full,
                                    const std::vector<double>& ma_full);

}  // namespace detail

}  // namespace btcts
