#include "btcts/sarima.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "btcts/errors.hpp"
#include "btcts/optimize.hpp"
#include "btcts/stats.hpp"

namespace btcts {

namespace detail {

// Partial autocorrelations in (-1,1) -> stationary AR coefficients via the
// Levinson-Durbin recursion. The MA variant flips the update sign, giving
// coefficients of an invertible 1 + sum theta_i B^i polynomial.
namespace {

std::vector<double> levinson(const std::vector<double>& pacfs, double sign) {
    const std::size_t m = pacfs.size();
    std::vector<double> y(pacfs), prev(m);
    for (std::size_t k = 1; k < m; ++k) {
        prev.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t i = 0; i < k; ++i) y[i] = prev[i] + sign * pacfs[k] * prev[k - 1 - i];
    }
    return y;
}

std::vector<double> levinson_inverse(const std::vector<double>& coefs, double sign) {
    const std::size_t m = coefs.size();
    std::vector<double> y(coefs), pacfs(m), prev(m);
    for (std::size_t k = m; k-- > 1;) {
        const double r = y[k];
        pacfs[k] = r;
        const double denom = 1.0 - r * r;
        if (denom <= 0.0)
            throw NumericalBreakdown("coefficient block is not strictly stationary/invertible");
        prev.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t i = 0; i < k; ++i)
            y[i] = (prev[i] - sign * r * prev[k - 1 - i]) / denom;
    }
    if (m > 0) pacfs[0] = y[0];
    return pacfs;
}

std::vector<double> map_tanh(const std::vector<double>& u) {
    std::vector<double> r(u.size());
    std::transform(u.begin(), u.end(), r.begin(), [](double v) { return std::tanh(v); });
    return r;
}

std::vector<double> map_atanh(const std::vector<double>& r) {
    std::vector<double> u(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (std::abs(r[i]) >= 1.0)
            throw NumericalBreakdown("partial autocorrelation outside (-1,1)");
        u[i] = std::atanh(r[i]);
    }
    return u;
}

}  // namespace

std::vector<double> ar_from_unconstrained(const std::vector<double>& u) {
    return levinson(map_tanh(u), -1.0);
}

std::vector<double> ar_to_unconstrained(const std::vector<double>& phi) {
    return map_atanh(levinson_inverse(phi, -1.0));
}

std::vector<double> ma_from_unconstrained(const std::vector<double>& u) {
    return levinson(map_tanh(u), 1.0);
}

std::vector<double> ma_to_unconstrained(const std::vector<double>& theta) {
    return map_atanh(levinson_inverse(theta, 1.0));
}

std::vector<double> expand_poly(const std::vector<double>& nonseasonal,
                                const std::vector<double>& seasonal, unsigned s, bool ma_sign) {
    const double sign = ma_sign ? 1.0 : -1.0;
    // Polynomial coefficient arrays in powers of B, index 0 = constant 1.
    std::vector<double> a(nonseasonal.size() + 1, 0.0);
    a[0] = 1.0;
    for (std::size_t i = 0; i < nonseasonal.size(); ++i) a[i + 1] = sign * nonseasonal[i];
    std::vector<double> b(seasonal.size() * s + 1, 0.0);
    b[0] = 1.0;
    for (std::size_t j = 0; j < seasonal.size(); ++j) b[(j + 1) * s] = sign * seasonal[j];

    std::vector<double> prod(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];

    std::vector<double> out(prod.size() - 1);
    for (std::size_t k = 1; k < prod.size(); ++k) out[k - 1] = sign * prod[k];
    return out;
}

std::vector<double> css_innovations(const std::vector<double>& w,
                                    const std::vector<double>& ar_full,
                                    const std::vector<double>& ma_full) {
    const std::size_t m = w.size();
    const std::size_t pa = ar_full.size(), qa = ma_full.size();
    std::vector<double> e(m, 0.0);
    for (std::size_t t = pa; t < m; ++t) {
        double v = w[t];
        for (std::size_t k = 1; k <= pa; ++k) v -= ar_full[k - 1] * w[t - k];
        for (std::size_t k = 1; k <= qa && k <= t; ++k) v -= ma_full[k - 1] * e[t - k];
        e[t] = v;
    }
    return e;
}

}  // namespace detail

namespace {

constexpr double kRootMargin = 1e-6;

// Smallest root modulus of 1 +/- sum c_i z^i via the companion matrix.
double min_root_modulus(const std::vector<double>& coefs, bool ma_sign) {
    const double sign = ma_sign ? 1.0 : -1.0;
    std::size_t deg = coefs.size();
    while (deg > 0 && coefs[deg - 1] == 0.0) --deg;
    if (deg == 0) return std::numeric_limits<double>::infinity();

    std::vector<double> b(deg + 1);
    b[0] = 1.0;
    for (std::size_t i = 1; i <= deg; ++i) b[i] = sign * coefs[i - 1];

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                              static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i)
        C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
            -b[i] / b[deg];

    Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
    double mn = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        mn = std::min(mn, std::abs(es.eigenvalues()[i]));
    return mn;
}

void check_roots(const std::vector<double>& coefs, bool ma_sign, const char* block) {
    if (min_root_modulus(coefs, ma_sign) <= 1.0 + kRootMargin)
        throw RootNearUnitCircle(std::string(block) + " polynomial root on or near the unit circle");
}

struct CoefficientBlocks {
    std::vector<double> ar, ma, sar, sma;
};

CoefficientBlocks split_blocks(const std::vector<double>& flat, const SarimaSpec& spec) {
    CoefficientBlocks b;
    auto it = flat.begin();
    b.ar.assign(it, it + spec.p);
    it += spec.p;
    b.ma.assign(it, it + spec.q);
    it += spec.q;
    b.sar.assign(it, it + spec.P);
    it += spec.P;
    b.sma.assign(it, it + spec.Q);
    return b;
}

double css_value(const std::vector<double>& w, const CoefficientBlocks& b, unsigned s) {
    const auto ar_full = detail::expand_poly(b.ar, b.sar, s, false);
    const auto ma_full = detail::expand_poly(b.ma, b.sma, s, true);
    const auto e = detail::css_innovations(w, ar_full, ma_full);
    double css = 0.0;
    for (std::size_t t = ar_full.size(); t < e.size(); ++t) css += e[t] * e[t];
    return css;
}

double gaussian_loglik(double css, std::size_t n_eff) {
    const double n = static_cast<double>(n_eff);
    return -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(css / n) + 1.0);
}

// Fully differenced working series plus the estimated mean (zero whenever
// any differencing is applied).
std::pair<std::vector<double>, double> working_series(const std::vector<double>& y,
                                                      const SarimaSpec& spec) {
    std::vector<double> w = y;
    for (unsigned i = 0; i < spec.d; ++i) {
        if (w.size() < 2) throw SeriesTooShort("series too short for regular differencing");
        for (std::size_t t = w.size() - 1; t > 0; --t) w[t] -= w[t - 1];
        w.erase(w.begin());
    }
    for (unsigned i = 0; i < spec.D; ++i) {
        if (w.size() <= spec.s) throw SeriesTooShort("series too short for seasonal differencing");
        for (std::size_t t = w.size() - 1; t >= spec.s; --t) w[t] -= w[t - spec.s];
        w.erase(w.begin(), w.begin() + spec.s);
    }
    double mean = 0.0;
    if (spec.d + spec.D == 0) {
        mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
        for (double& v : w) v -= mean;
    }
    return {std::move(w), mean};
}

std::vector<double> forecast_values(const SarimaFit& fit, const std::vector<double>& hist,
                                    std::size_t horizon) {
    const SarimaSpec& spec = fit.spec;
    if (hist.size() < fit.spec.required_history())
        throw InsufficientHistory("history shorter than the model's presample span");
    if (horizon == 0) return {};

    const auto ar_full = detail::expand_poly(fit.ar, fit.sar, spec.s, false);
    const auto ma_full = detail::expand_poly(fit.ma, fit.sma, spec.s, true);

    // Differencing levels: levels[0] = hist, then d regular and D seasonal.
    std::vector<std::vector<double>> levels;
    levels.push_back(hist);
    for (unsigned i = 0; i < spec.d; ++i) {
        const auto& prev = levels.back();
        std::vector<double> next(prev.size() - 1);
        for (std::size_t t = 1; t < prev.size(); ++t) next[t - 1] = prev[t] - prev[t - 1];
        levels.push_back(std::move(next));
    }
    for (unsigned i = 0; i < spec.D; ++i) {
        const auto& prev = levels.back();
        std::vector<double> next(prev.size() - spec.s);
        for (std::size_t t = spec.s; t < prev.size(); ++t) next[t - spec.s] = prev[t] - prev[t - spec.s];
        levels.push_back(std::move(next));
    }

    std::vector<double> w = levels.back();
    if (fit.mean != 0.0)
        for (double& v : w) v -= fit.mean;

    const auto e = detail::css_innovations(w, ar_full, ma_full);
    const std::size_t m = w.size();
    std::vector<double> wf;  // forecasts of the differenced series
    wf.reserve(horizon);
    auto w_at = [&](std::size_t idx) { return idx < m ? w[idx] : wf[idx - m]; };
    for (std::size_t h = 0; h < horizon; ++h) {
        const std::size_t t = m + h;
        double v = 0.0;
        for (std::size_t k = 1; k <= ar_full.size() && k <= t; ++k)
            v += ar_full[k - 1] * w_at(t - k);
        for (std::size_t k = 1; k <= ma_full.size() && k <= t; ++k)
            if (t - k < m) v += ma_full[k - 1] * e[t - k];
        wf.push_back(v);
    }

    if (spec.d + spec.D == 0) {
        for (double& v : wf) v += fit.mean;
        return wf;
    }

    // Integrate the differences back out, one step at a time: undo the D
    // seasonal passes first (they were applied last), then the d regular
    // passes; the appended values at the top level are the forecasts.
    std::vector<double> out;
    out.reserve(horizon);
    const std::size_t top = levels.size() - 1;
    for (std::size_t h = 0; h < horizon; ++h) {
        levels[top].push_back(wf[h]);
        for (std::size_t j = top; j-- > 0;) {
            const std::size_t lag = (j >= spec.d) ? spec.s : 1;  // level j+1 differenced level j at `lag`
            const std::size_t t = levels[j].size();
            levels[j].push_back(levels[j + 1].back() + levels[j][t - lag]);
        }
        out.push_back(levels[0].back());
    }
    return out;
}

}  // namespace

void SarimaSpec::validate() const {
    if (s == 0) throw ConfigError("seasonal period s must be >= 1");
    if (s == 1 && (P + D + Q) > 0)
        throw ConfigError("seasonal terms require a seasonal period s >= 2");
}

std::size_t SarimaSpec::required_history() const {
    return d + static_cast<std::size_t>(D) * s +
           std::max<std::size_t>(p + static_cast<std::size_t>(P) * s,
                                 q + static_cast<std::size_t>(Q) * s);
}

std::vector<double> SarimaFit::coefficients() const {
    std::vector<double> flat;
    flat.reserve(ar.size() + ma.size() + sar.size() + sma.size());
    flat.insert(flat.end(), ar.begin(), ar.end());
    flat.insert(flat.end(), ma.begin(), ma.end());
    flat.insert(flat.end(), sar.begin(), sar.end());
    flat.insert(flat.end(), sma.begin(), sma.end());
    return flat;
}

SarimaFit fit_sarima(const TimeSeries& train, const SarimaSpec& spec) {
    spec.validate();
    if (train.size() <= spec.required_history() + 10)
        throw SeriesTooShort("training series too short for the requested model order");

    auto [w, mean] = working_series(train.values(), spec);
    const std::size_t ar_span = spec.p + static_cast<std::size_t>(spec.P) * spec.s;
    if (w.size() <= ar_span) throw SeriesTooShort("differenced series shorter than the AR span");
    const std::size_t n_eff = w.size() - ar_span;

    SarimaFit fit;
    fit.spec = spec;
    fit.mean = mean;
    fit.n_effective = n_eff;
    for (unsigned i = 1; i <= spec.p; ++i) fit.coef_names.push_back("ar" + std::to_string(i));
    for (unsigned i = 1; i <= spec.q; ++i) fit.coef_names.push_back("ma" + std::to_string(i));
    for (unsigned i = 1; i <= spec.P; ++i) fit.coef_names.push_back("sar" + std::to_string(i * spec.s));
    for (unsigned i = 1; i <= spec.Q; ++i) fit.coef_names.push_back("sma" + std::to_string(i * spec.s));

    const std::size_t n_coef = spec.n_coefficients();
    if (n_coef == 0) {
        // Pure difference (random walk when d >= 1): nothing to optimize.
        double css = 0.0;
        for (double v : w) css += v * v;
        fit.sigma2 = css / static_cast<double>(n_eff);
        fit.loglik = gaussian_loglik(css, n_eff);
        fit.residuals = w;
        fit.converged = true;
        return fit;
    }

    // Starting point: every coefficient at 0.1, signed by the lag-1 sample
    // autocorrelation of the differenced series.
    double r1_num = 0.0, r1_den = 0.0;
    for (std::size_t t = 0; t < w.size(); ++t) {
        r1_den += w[t] * w[t];
        if (t > 0) r1_num += w[t] * w[t - 1];
    }
    const double start = (r1_den > 0.0 && r1_num < 0.0) ? -0.1 : 0.1;
    CoefficientBlocks init;
    init.ar.assign(spec.p, start);
    init.ma.assign(spec.q, start);
    init.sar.assign(spec.P, start);
    init.sma.assign(spec.Q, start);

    std::vector<double> u0;
    auto append = [&u0](const std::vector<double>& v) { u0.insert(u0.end(), v.begin(), v.end()); };
    append(detail::ar_to_unconstrained(init.ar));
    append(detail::ma_to_unconstrained(init.ma));
    append(detail::ar_to_unconstrained(init.sar));
    append(detail::ma_to_unconstrained(init.sma));

    auto blocks_from_u = [&spec](const std::vector<double>& u) {
        CoefficientBlocks b;
        auto it = u.begin();
        b.ar = detail::ar_from_unconstrained(std::vector<double>(it, it + spec.p));
        it += spec.p;
        b.ma = detail::ma_from_unconstrained(std::vector<double>(it, it + spec.q));
        it += spec.q;
        b.sar = detail::ar_from_unconstrained(std::vector<double>(it, it + spec.P));
        it += spec.P;
        b.sma = detail::ma_from_unconstrained(std::vector<double>(it, it + spec.Q));
        return b;
    };

    const Objective objective = [&](const std::vector<double>& u) {
        return css_value(w, blocks_from_u(u), spec.s);
    };

    OptimResult opt = nelder_mead(objective, u0, 1e-10, 20000);
    CoefficientBlocks best = blocks_from_u(opt.x_opt);
    fit.ar = best.ar;
    fit.ma = best.ma;
    fit.sar = best.sar;
    fit.sma = best.sma;
    fit.converged = opt.converged;

    check_roots(fit.ar, false, "AR");
    check_roots(fit.sar, false, "seasonal AR");
    check_roots(fit.ma, true, "MA");
    check_roots(fit.sma, true, "seasonal MA");

    const auto ar_full = detail::expand_poly(fit.ar, fit.sar, spec.s, false);
    const auto ma_full = detail::expand_poly(fit.ma, fit.sma, spec.s, true);
    const auto e = detail::css_innovations(w, ar_full, ma_full);
    double css = 0.0;
    for (std::size_t t = ar_span; t < e.size(); ++t) css += e[t] * e[t];
    fit.sigma2 = css / static_cast<double>(n_eff);
    fit.loglik = gaussian_loglik(css, n_eff);
    fit.residuals.assign(e.begin() + static_cast<std::ptrdiff_t>(ar_span), e.end());

    // Inference: numerical Hessian of the concentrated negative
    // log-likelihood in the original coefficient space.
    const Objective nll = [&](const std::vector<double>& flat) {
        const double c = css_value(w, split_blocks(flat, spec), spec.s);
        if (!(c > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        return -gaussian_loglik(c, n_eff);
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    fit.stderrors.assign(n_coef, nan);
    fit.p_values.assign(n_coef, nan);
    try {
        const std::vector<double> H = numerical_hessian(nll, fit.coefficients());
        Eigen::MatrixXd Hm(static_cast<Eigen::Index>(n_coef), static_cast<Eigen::Index>(n_coef));
        for (std::size_t i = 0; i < n_coef; ++i)
            for (std::size_t j = 0; j < n_coef; ++j)
                Hm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = H[i * n_coef + j];
        Eigen::FullPivLU<Eigen::MatrixXd> lu(Hm);
        if (lu.isInvertible()) {
            const Eigen::MatrixXd cov = lu.inverse();
            const std::vector<double> c = fit.coefficients();
            for (std::size_t i = 0; i < n_coef; ++i) {
                const double v = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
                if (v > 0.0) {
                    fit.stderrors[i] = std::sqrt(v);
                    fit.p_values[i] = 2.0 * norm_cdf(-std::abs(c[i] / fit.stderrors[i]));
                }
            }
        }
    } catch (const NumericalError&) {
        // Leave NaN inference; the point estimates stand.
    }
    return fit;
}

std::vector<double> forecast(const SarimaFit& fit, const TimeSeries& history,
                             std::size_t horizon) {
    return forecast_values(fit, history.values(), horizon);
}

ForecastTrace rolling_forecast(const SarimaFit& fit, const SplitPair& full) {
    ForecastTrace trace;
    trace.scheme = ForecastScheme::rolling_one_step;
    trace.target_label = full.test.unit();
    trace.timestamps = full.test.timestamps();
    trace.actual = full.test.values();
    trace.predicted.reserve(full.test.size());

    std::vector<double> hist = full.train.values();
    hist.reserve(full.train.size() + full.test.size());
    for (std::size_t i = 0; i < full.test.size(); ++i) {
        trace.predicted.push_back(forecast_values(fit, hist, 1)[0]);
        hist.push_back(full.test.value(i));
    }
    return trace;
}

ForecastTrace static_forecast(const SarimaFit& fit, const SplitPair& full) {
    ForecastTrace trace;
    trace.scheme = ForecastScheme::static_multi_step;
    trace.target_label = full.test.unit();
    trace.timestamps = full.test.timestamps();
    trace.actual = full.test.values();
    trace.predicted = forecast_values(fit, full.train.values(), full.test.size());
    return trace;
}

}  // namespace btcts
