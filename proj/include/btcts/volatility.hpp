#pragma once

#include <cstddef>
#include <vector>

#include "btcts/series.hpp"

namespace btcts {

/// GARCH(1,1) Gaussian ML fit: sigma2_t = omega + alpha1*eps2_{t-1}
/// + beta1*sigma2_{t-1}, eps_t = r_t - mu, sigma2_0 = sample variance.
struct GarchFit {
    double mu = 0.0;
    double omega = 0.0;
    double alpha1 = 0.0;
    double beta1 = 0.0;
    double loglik = 0.0;
    std::vector<double> sigma2_path;  // conditional variances, one per input return
    double persistence = 0.0;         // alpha1 + beta1, kept below 1 by the transform
    double last_eps = 0.0;            // final in-sample residual, seeds forecasting
    bool converged = false;
};

/// EGARCH(1,1) Gaussian ML fit:
/// ln sigma2_t = omega + beta1*ln sigma2_{t-1}
///             + alpha1*(|z_{t-1}| - sqrt(2/pi)) + gamma1*z_{t-1},
/// z_t = eps_t / sigma_t, ln sigma2_0 = ln(sample variance).
struct EgarchFit {
    double mu = 0.0;
    double omega = 0.0;
    double alpha1 = 0.0;
    double beta1 = 0.0;  // in (-1,1)
    double gamma1 = 0.0;
    double loglik = 0.0;
    std::vector<double> log_sigma2_path;
    double last_eps = 0.0;
    bool converged = false;
};

/// One-step-ahead conditional volatility against realized return magnitude.
struct VolForecastTrace {
    std::vector<Date> timestamps;
    std::vector<double> realized_abs_return;  // |r_t - mu|
    std::vector<double> predicted_sigma;      // sigma_t from the frozen recursion
};

/// Fit GARCH(1,1) by maximizing the Gaussian log-likelihood over smoothly
/// transformed parameters (omega = exp(w); alpha1 + beta1 capped at 0.9999
/// through a sigmoid pair), with mu estimated jointly. Needs at least 100
/// observations with nonzero variance.
GarchFit fit_garch(const TimeSeries& returns);

/// Fit EGARCH(1,1) likewise; |beta1| < 1 is enforced via tanh, the other
/// parameters are unconstrained.
EgarchFit fit_egarch(const TimeSeries& returns);

/// Continue the fitted variance recursion across the test window with
/// parameters frozen, feeding in each realized residual after its one-step
/// sigma has been predicted. test must immediately follow the fit's
/// training sample.
VolForecastTrace forecast_volatility(const GarchFit& fit, const TimeSeries& test);
VolForecastTrace forecast_volatility(const EgarchFit& fit, const TimeSeries& test);

/// One-step log-variance response to a standardized shock z, evaluated at
/// the long-run log-variance level omega/(1 - beta1). With gamma1 < 0 the
/// response is larger for negative shocks.
std::vector<double> news_impact(const EgarchFit& fit, const std::vector<double>& z_grid);

}  // namespace btcts
