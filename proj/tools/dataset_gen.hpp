#pragma once

// Generator for the bundled synthetic daily dataset (data/btc_data.csv).
//
// The series is built in two eras. Era 1 stays strictly below the $100
// filter threshold (a log-price ramp with slow AR(1) wobble). Era 2 is the
// modeling target: log returns follow a zero-mean ARMA(1,1) with EGARCH(1,1)
// innovations plus a regime-dependent drift, so the filtered sample carries
// autocorrelation, volatility clustering, and a leverage effect. Covariate
// columns (fees, hashrate, difficulty) co-move with price: fee log-changes
// track price log-changes with independent noise, hashrate follows a smoothed
// log price, and difficulty is a 14-day staircase over hashrate.
//
// All randomness flows through one deterministic Gaussian stream, and the
// `kappa` return rescale is applied after sampling, so regenerating with the
// same parameters reproduces the file byte for byte.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "btcts/date.hpp"
#include "btcts/simulate.hpp"

namespace dataset {

struct Params {
    std::uint64_t seed = 338;
    int total_rows = 3488;
    int era2_rows = 2425;
    std::string start_date = "2010-07-17";

    // Era-2 log-return dynamics.
    double phi = -0.1203;
    double theta = 0.4103;
    double drift_early = 0.0035;
    int early_days = 120;
    double drift_main = 0.00204;
    int calm_tail = 270;
    double drift_tail = 0.0;
    double lnvar_main = -7.1275;  // long-run log variance, main regime
    double lnvar_calm = -7.6;     // long-run log variance, final calm stretch
    double eg_alpha = 0.4407;
    double eg_beta = 0.92;
    double eg_gamma = -0.10;
    double kappa = 0.92842275151468201;  // post-hoc return rescale (level centering)
    double lp_start = 4.9416424226093039;  // log(140)

    // Era 1 (below-threshold prefix).
    double e1_lp_start = -2.9004220466129556;  // log(0.055)
    double e1_lp_end = 3.9512437185814275;     // log(52)
    double e1_rho = 0.985;
    double e1_sigma = 0.03;

    // Covariates.
    double fee_elasticity = 0.9;
    double fee_sigma = 0.0614;
    double lf_start = -7.6009024595420822;  // log(0.0005)
    double hash_level = 20.0;
    double hash_elasticity = 1.35;
    double hash_rho = 0.99;
    double hash_sigma = 0.02;
    double ema_alpha = 0.03;
    int difficulty_window = 14;
    double difficulty_offset = 0.08;
};

struct Columns {
    std::vector<std::string> dates;
    std::vector<double> price;
    std::vector<double> difficulty;
    std::vector<double> hashrate;
    std::vector<double> fees;
};

inline Columns generate(const Params& p) {
    btcts::GaussianSampler normal(p.seed);
    const int n = p.total_rows;
    const int n1 = p.total_rows - p.era2_rows;
    const int n2 = p.era2_rows;
    std::vector<double> lp(static_cast<std::size_t>(n));

    // Era 1: deterministic ramp plus mean-reverting noise.
    double wobble = 0.0;
    for (int i = 0; i < n1; ++i) {
        wobble = p.e1_rho * wobble + p.e1_sigma * normal();
        const double ramp = p.e1_lp_start + (p.e1_lp_end - p.e1_lp_start) *
                                                static_cast<double>(i) /
                                                static_cast<double>(n1 - 1);
        lp[static_cast<std::size_t>(i)] = ramp + wobble;
    }

    // Era 2: ARMA(1,1) + EGARCH(1,1) log returns.
    const double k_absz = std::sqrt(2.0 / 3.14159265358979323846);
    std::vector<double> r(static_cast<std::size_t>(n2 - 1));
    double ls2 = p.lnvar_main;
    double eps_prev = 0.0, z_prev = 0.0, x_prev = 0.0;
    for (int t = 0; t < n2 - 1; ++t) {
        const bool calm = t >= n2 - 1 - p.calm_tail;
        const double omega = (calm ? p.lnvar_calm : p.lnvar_main) * (1.0 - p.eg_beta);
        if (t > 0)
            ls2 = omega + p.eg_beta * ls2 + p.eg_alpha * (std::abs(z_prev) - k_absz) +
                  p.eg_gamma * z_prev;
        const double z = normal();
        const double eps = std::exp(0.5 * ls2) * z;
        const double x = (t > 0 ? p.phi * x_prev + p.theta * eps_prev : 0.0) + eps;
        const double drift =
            t < p.early_days ? p.drift_early : (calm ? p.drift_tail : p.drift_main);
        r[static_cast<std::size_t>(t)] = drift + x;
        x_prev = x;
        eps_prev = eps;
        z_prev = z;
    }
    lp[static_cast<std::size_t>(n1)] = p.lp_start;
    for (int t = 0; t < n2 - 1; ++t)
        lp[static_cast<std::size_t>(n1 + t + 1)] =
            lp[static_cast<std::size_t>(n1 + t)] + p.kappa * r[static_cast<std::size_t>(t)];

    // Fees: log-changes track price log-changes with independent noise.
    std::vector<double> lf(static_cast<std::size_t>(n));
    lf[0] = p.lf_start;
    for (int t = 1; t < n; ++t)
        lf[static_cast<std::size_t>(t)] =
            lf[static_cast<std::size_t>(t - 1)] +
            p.fee_elasticity * (lp[static_cast<std::size_t>(t)] -
                                lp[static_cast<std::size_t>(t - 1)]) +
            p.fee_sigma * normal();

    // Hashrate: elastic response to smoothed log price plus slow noise.
    std::vector<double> lh(static_cast<std::size_t>(n));
    double ema = lp[0];
    double hn = 0.0;
    for (int t = 0; t < n; ++t) {
        ema += p.ema_alpha * (lp[static_cast<std::size_t>(t)] - ema);
        hn = p.hash_rho * hn + p.hash_sigma * normal();
        lh[static_cast<std::size_t>(t)] = p.hash_level + p.hash_elasticity * ema + hn;
    }

    // Difficulty: retarget-window staircase over hashrate.
    std::vector<double> ld(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const int anchor = (t / p.difficulty_window) * p.difficulty_window;
        ld[static_cast<std::size_t>(t)] =
            lh[static_cast<std::size_t>(anchor)] + p.difficulty_offset;
    }

    Columns out;
    out.dates.reserve(static_cast<std::size_t>(n));
    const btcts::Date d0 = btcts::Date::parse(p.start_date);
    for (int t = 0; t < n; ++t) out.dates.push_back((d0 + t).to_string());
    out.price.resize(static_cast<std::size_t>(n));
    out.fees.resize(static_cast<std::size_t>(n));
    out.hashrate.resize(static_cast<std::size_t>(n));
    out.difficulty.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const auto i = static_cast<std::size_t>(t);
        out.price[i] = std::exp(lp[i]);
        out.fees[i] = std::exp(lf[i]);
        out.hashrate[i] = std::exp(lh[i]);
        out.difficulty[i] = std::exp(ld[i]);
    }
    return out;
}

inline std::string to_csv(const Columns& c) {
    auto fmt = [](double v, const char* spec) {
        char b[64];
        std::snprintf(b, sizeof(b), spec, v);
        return std::string(b);
    };
    std::string out = "date,priceUSD,difficulty,hashrate,transactionfeesUSD\n";
    for (std::size_t i = 0; i < c.dates.size(); ++i) {
        out += c.dates[i] + "," + fmt(c.price[i], "%.10g") + "," +
               fmt(c.difficulty[i], "%.8g") + "," + fmt(c.hashrate[i], "%.8g") + "," +
               fmt(c.fees[i], "%.8g") + "\n";
    }
    return out;
}

}  // namespace dataset
