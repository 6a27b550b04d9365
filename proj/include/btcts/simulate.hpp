#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace btcts {

/// Standard normal draws via Box-Muller on mt19937_64. std::normal_distribution
/// is implementation-defined, so seeded output would differ across standard
/// libraries; this sampler gives the same stream everywhere.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}
    double operator()();

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Simulate an ARMA(p,q) path x_t = c + sum ar_i x_{t-i} + e_t + sum ma_j e_{t-j}
/// with N(0, sigma^2) innovations. The first `burn_in` draws are discarded so
/// the returned path starts near the stationary distribution.
std::vector<double> simulate_arma(const std::vector<double>& ar, const std::vector<double>& ma,
                                  double constant, double sigma, std::size_t n,
                                  std::uint64_t seed, std::size_t burn_in = 500);

/// Simulate a GARCH(1,1) return path e_t = sigma_t z_t with
/// sigma_t^2 = omega + alpha*e_{t-1}^2 + beta*sigma_{t-1}^2, z_t ~ N(0,1).
std::vector<double> simulate_garch(double omega, double alpha, double beta, std::size_t n,
                                   std::uint64_t seed, std::size_t burn_in = 500);

/// Simulate an EGARCH(1,1) return path with
/// ln sigma_t^2 = omega + beta*ln sigma_{t-1}^2
///              + alpha*(|z_{t-1}| - sqrt(2/pi)) + gamma*z_{t-1}.
std::vector<double> simulate_egarch(double omega, double alpha, double beta, double gamma,
                                    std::size_t n, std::uint64_t seed,
                                    std::size_t burn_in = 500);

}  // namespace btcts
