#include "btcts/volatility.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "btcts/errors.hpp"
#include "btcts/optimize.hpp"

namespace btcts {

namespace {

constexpr double kPersistenceCap = 0.9999;
const double kAbsZMean = std::sqrt(2.0 / std::numbers::pi);  // E|z| for z ~ N(0,1)

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double y) { return std::log(y / (1.0 - y)); }

double sample_variance(const std::vector<double>& r) {
    const double n = static_cast<double>(r.size());
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    return var / (n - 1.0);
}

void check_input(const TimeSeries& returns) {
    if (returns.size() < 100)
        throw SeriesTooShort("volatility fits need at least 100 observations");
    if (sample_variance(returns.values()) <= 0.0) throw DegenerateVariance();
}

// Minimize twice, the second run restarted from the first optimum: a
// fresh simplex there shakes off any degeneracy the first one collapsed
// into, and can only improve the objective.
OptimResult minimize_with_restart(const Objective& f, const std::vector<double>& x0) {
    OptimResult first = nelder_mead(f, x0, 1e-8, 20000);
    OptimResult second = nelder_mead(f, first.x_opt, 1e-8, 20000);
    return second;
}

struct GarchParams {
    double mu, omega, alpha, beta;
};

GarchParams garch_from_unconstrained(const std::vector<double>& x) {
    const double persistence = kPersistenceCap * sigmoid(x[2]);
    const double ratio = sigmoid(x[3]);
    return {x[0], std::exp(x[1]), persistence * ratio, persistence * (1.0 - ratio)};
}

// Gaussian log-likelihood; fills path when given one.
double garch_loglik(const GarchParams& p, const std::vector<double>& r, double var0,
                    std::vector<double>* path, double* last_eps) {
    const std::size_t n = r.size();
    if (path) path->resize(n);
    double ll = 0.0;
    double s2 = var0;
    double eps = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) s2 = p.omega + p.alpha * eps * eps + p.beta * s2;
        if (!(s2 > 0.0)) return -std::numeric_limits<double>::infinity();
        eps = r[t] - p.mu;
        ll -= 0.5 * (std::log(2.0 * std::numbers::pi) + std::log(s2) + eps * eps / s2);
        if (path) (*path)[t] = s2;
    }
    if (last_eps) *last_eps = eps;
    return ll;
}

struct EgarchParams {
    double mu, omega, alpha, beta, gamma;
};

EgarchParams egarch_from_unconstrained(const std::vector<double>& x) {
    return {x[0], x[1], x[2], std::tanh(x[3]), x[4]};
}

double egarch_loglik(const EgarchParams& p, const std::vector<double>& r, double var0,
                     std::vector<double>* path, double* last_eps) {
    const std::size_t n = r.size();
    if (path) path->resize(n);
    double ll = 0.0;
    double ls2 = std::log(var0);
    double z = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) ls2 = p.omega + p.beta * ls2 + p.alpha * (std::abs(z) - kAbsZMean) + p.gamma * z;
        if (!std::isfinite(ls2)) return -std::numeric_limits<double>::infinity();
        const double s2 = std::exp(ls2);
        const double eps = r[t] - p.mu;
        ll -= 0.5 * (std::log(2.0 * std::numbers::pi) + ls2 + eps * eps / s2);
        z = eps / std::sqrt(s2);
        if (path) (*path)[t] = ls2;
        if (last_eps) *last_eps = eps;
    }
    return ll;
}

}  // namespace

GarchFit fit_garch(const TimeSeries& returns) {
    check_input(returns);
    const std::vector<double>& r = returns.values();
    const double var0 = sample_variance(r);
    const double mean0 = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());

    const Objective nll = [&](const std::vector<double>& x) {
        return -garch_loglik(garch_from_unconstrained(x), r, var0, nullptr, nullptr);
    };

    // Start at alpha=0.1, beta=0.8, omega=0.1*var, mu=sample mean.
    const double p0 = 0.9, ratio0 = 0.1 / 0.9;
    const std::vector<double> x0 = {mean0, std::log(0.1 * var0), logit(p0 / kPersistenceCap),
                                    logit(ratio0)};
    OptimResult opt = minimize_with_restart(nll, x0);
    const GarchParams p = garch_from_unconstrained(opt.x_opt);

    GarchFit fit;
    fit.mu = p.mu;
    fit.omega = p.omega;
    fit.alpha1 = p.alpha;
    fit.beta1 = p.beta;
    fit.persistence = p.alpha + p.beta;
    fit.converged = opt.converged;
    fit.loglik = garch_loglik(p, r, var0, &fit.sigma2_path, &fit.last_eps);
    return fit;
}

EgarchFit fit_egarch(const TimeSeries& returns) {
    check_input(returns);
    const std::vector<double>& r = returns.values();
    const double var0 = sample_variance(r);
    const double mean0 = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());

    const Objective nll = [&](const std::vector<double>& x) {
        return -egarch_loglik(egarch_from_unconstrained(x), r, var0, nullptr, nullptr);
    };

    // Start at omega=0.05*ln(var), alpha=0.2, beta=0.9, gamma=-0.05.
    const std::vector<double> x0 = {mean0, 0.05 * std::log(var0), 0.2, std::atanh(0.9), -0.05};
    OptimResult opt = minimize_with_restart(nll, x0);
    const EgarchParams p = egarch_from_unconstrained(opt.x_opt);

    EgarchFit fit;
    fit.mu = p.mu;
    fit.omega = p.omega;
    fit.alpha1 = p.alpha;
    fit.beta1 = p.beta;
    fit.gamma1 = p.gamma;
    fit.converged = opt.converged;
    fit.loglik = egarch_loglik(p, r, var0, &fit.log_sigma2_path, &fit.last_eps);
    return fit;
}

VolForecastTrace forecast_volatility(const GarchFit& fit, const TimeSeries& test) {
    if (fit.sigma2_path.empty()) throw EmptyTrace();
    VolForecastTrace trace;
    trace.timestamps = test.timestamps();
    const std::size_t n = test.size();
    trace.realized_abs_return.resize(n);
    trace.predicted_sigma.resize(n);
    double s2 = fit.sigma2_path.back();
    double eps = fit.last_eps;
    for (std::size_t t = 0; t < n; ++t) {
        s2 = fit.omega + fit.alpha1 * eps * eps + fit.beta1 * s2;
        trace.predicted_sigma[t] = std::sqrt(s2);
        eps = test.value(t) - fit.mu;
        trace.realized_abs_return[t] = std::abs(eps);
    }
    return trace;
}

VolForecastTrace forecast_volatility(const EgarchFit& fit, const TimeSeries& test) {
    if (fit.log_sigma2_path.empty()) throw EmptyTrace();
    VolForecastTrace trace;
    trace.timestamps = test.timestamps();
    const std::size_t n = test.size();
    trace.realized_abs_return.resize(n);
    trace.predicted_sigma.resize(n);
    double ls2 = fit.log_sigma2_path.back();
    double z = fit.last_eps / std::exp(0.5 * ls2);
    for (std::size_t t = 0; t < n; ++t) {
        ls2 = fit.omega + fit.beta1 * ls2 + fit.alpha1 * (std::abs(z) - kAbsZMean) +
              fit.gamma1 * z;
        const double sigma = std::exp(0.5 * ls2);
        trace.predicted_sigma[t] = sigma;
        const double eps = test.value(t) - fit.mu;
        trace.realized_abs_return[t] = std::abs(eps);
        z = eps / sigma;
    }
    return trace;
}

std::vector<double> news_impact(const EgarchFit& fit, const std::vector<double>& z_grid) {
    const double long_run = fit.omega / (1.0 - fit.beta1);
    std::vector<double> out(z_grid.size());
    for (std::size_t i = 0; i < z_grid.size(); ++i) {
        const double z = z_grid[i];
        out[i] = fit.omega + fit.beta1 * long_run +
                 fit.alpha1 * (std::abs(z) - kAbsZMean) + fit.gamma1 * z;
    }
    return out;
}

}  // namespace btcts
