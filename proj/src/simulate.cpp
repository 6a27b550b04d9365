#include "btcts/simulate.hpp"

#include <cmath>
#include <numbers>

#include "btcts/errors.hpp"

namespace btcts {

double GaussianSampler::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller with u1 in (0,1]: shift the 53-bit uniform away from zero.
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) / 9007199254740993.0;  // 2^53 + 1
    const double u2 = static_cast<double>(rng_() >> 11) / 9007199254740992.0;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::vector<double> simulate_arma(const std::vector<double>& ar, const std::vector<double>& ma,
                                  double constant, double sigma, std::size_t n,
                                  std::uint64_t seed, std::size_t burn_in) {
    if (n == 0) throw ConfigError("simulate_arma needs n >= 1");
    if (sigma <= 0.0) throw ConfigError("simulate_arma needs sigma > 0");
    GaussianSampler z(seed);
    const std::size_t p = ar.size(), q = ma.size();
    const std::size_t total = n + burn_in;
    std::vector<double> x(total, 0.0), e(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        e[t] = sigma * z();
        double v = constant + e[t];
        for (std::size_t i = 0; i < p && i < t; ++i) v += ar[i] * x[t - 1 - i];
        for (std::size_t j = 0; j < q && j < t; ++j) v += ma[j] * e[t - 1 - j];
        x[t] = v;
    }
    return std::vector<double>(x.begin() + burn_in, x.end());
}

std::vector<double> simulate_garch(double omega, double alpha, double beta, std::size_t n,
                                   std::uint64_t seed, std::size_t burn_in) {
    if (n == 0) throw ConfigError("simulate_garch needs n >= 1");
    if (omega <= 0.0 || alpha < 0.0 || beta < 0.0 || alpha + beta >= 1.0)
        throw ConfigError("simulate_garch needs omega > 0, alpha,beta >= 0, alpha+beta < 1");
    GaussianSampler z(seed);
    const std::size_t total = n + burn_in;
    std::vector<double> e(total);
    double s2 = omega / (1.0 - alpha - beta);  // unconditional variance
    for (std::size_t t = 0; t < total; ++t) {
        e[t] = std::sqrt(s2) * z();
        s2 = omega + alpha * e[t] * e[t] + beta * s2;
    }
    return std::vector<double>(e.begin() + burn_in, e.end());
}

std::vector<double> simulate_egarch(double omega, double alpha, double beta, double gamma,
                                    std::size_t n, std::uint64_t seed, std::size_t burn_in) {
    if (n == 0) throw ConfigError("simulate_egarch needs n >= 1");
    if (std::abs(beta) >= 1.0) throw ConfigError("simulate_egarch needs |beta| < 1");
    GaussianSampler zs(seed);
    const double k = std::sqrt(2.0 / std::numbers::pi);
    const std::size_t total = n + burn_in;
    std::vector<double> e(total);
    double ls2 = omega / (1.0 - beta);  // unconditional mean of ln sigma^2
    for (std::size_t t = 0; t < total; ++t) {
        const double s = std::exp(0.5 * ls2);
        const double z = zs();
        e[t] = s * z;
        ls2 = omega + beta * ls2 + alpha * (std::abs(z) - k) + gamma * z;
    }
    return std::vector<double>(e.begin() + burn_in, e.end());
}

}  // namespace btcts
