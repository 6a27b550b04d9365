#include "btcts/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "btcts/errors.hpp"

namespace btcts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const Objective& f, const std::vector<double>& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
}

}  // namespace

OptimResult nelder_mead(const Objective& f, std::vector<double> x0, double tol,
                        unsigned max_iter) {
    const std::size_t n = x0.size();
    if (n == 0) throw ConfigError("nelder_mead needs at least one parameter");

    const double f0 = f(x0);
    if (!std::isfinite(f0)) throw ObjectiveNonFiniteAtStart();

    // Simplex of n+1 vertices with objective values, kept sorted best-first.
    std::vector<std::vector<double>> verts(n + 1, x0);
    std::vector<double> fv(n + 1);
    fv[0] = f0;
    for (std::size_t i = 0; i < n; ++i) {
        const double step = std::max(0.05 * std::abs(x0[i]), 0.00025);
        verts[i + 1][i] += step;
        fv[i + 1] = guarded(f, verts[i + 1]);
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> v2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            v2[i] = std::move(verts[order[i]]);
            f2[i] = fv[order[i]];
        }
        verts = std::move(v2);
        fv = std::move(f2);
    };
    sort_simplex();

    constexpr double alpha = 1.0;  // reflection
    constexpr double gamma = 2.0;  // expansion
    constexpr double rho = 0.5;    // contraction
    constexpr double sigma = 0.5;  // shrink

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    unsigned iter = 0;
    bool converged = false;
    double spread = kInf;

    for (; iter < max_iter; ++iter) {
        spread = fv[n] - fv[0];
        if (!std::isfinite(spread)) spread = kInf;
        if (spread < tol) {
            converged = true;
            break;
        }

        // Centroid of all vertices except the worst.
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += verts[i][j];
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - verts[n][j]);
        const double fr = guarded(f, xr);

        if (fr < fv[0]) {
            for (std::size_t j = 0; j < n; ++j)
                xe[j] = centroid[j] + gamma * (xr[j] - centroid[j]);
            const double fe = guarded(f, xe);
            if (fe < fr) {
                verts[n] = xe;
                fv[n] = fe;
            } else {
                verts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            verts[n] = xr;
            fv[n] = fr;
        } else {
            // Contract toward the better of the worst vertex and reflection.
            const bool outside = fr < fv[n];
            const std::vector<double>& toward = outside ? xr : verts[n];
            for (std::size_t j = 0; j < n; ++j)
                xc[j] = centroid[j] + rho * (toward[j] - centroid[j]);
            const double fc = guarded(f, xc);
            if (fc < std::min(fr, fv[n])) {
                verts[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        verts[i][j] = verts[0][j] + sigma * (verts[i][j] - verts[0][j]);
                    fv[i] = guarded(f, verts[i]);
                }
            }
        }
        sort_simplex();
    }

    return OptimResult{verts[0], fv[0], iter, converged,
                       std::isfinite(spread) ? spread : kInf};
}

std::vector<double> numerical_hessian(const Objective& f, const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) throw ConfigError("numerical_hessian needs at least one parameter");
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = std::max(1e-4 * std::abs(x[i]), 1e-5);

    auto eval = [&](std::vector<double> p) {
        const double v = f(p);
        if (!std::isfinite(v))
            throw NonFiniteEvaluation("objective not finite while differentiating");
        return v;
    };

    const double f00 = eval(x);
    std::vector<double> H(n * n, 0.0);
    std::vector<double> p = x;

    // Diagonal: (f(x+h) - 2 f(x) + f(x-h)) / h^2.
    for (std::size_t i = 0; i < n; ++i) {
        p = x;
        p[i] = x[i] + h[i];
        const double fp = eval(p);
        p[i] = x[i] - h[i];
        const double fm = eval(p);
        H[i * n + i] = (fp - 2.0 * f00 + fm) / (h[i] * h[i]);
    }

    // Off-diagonal: four-point cross difference, symmetrized by construction.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            p = x;
            p[i] = x[i] + h[i];
            p[j] = x[j] + h[j];
            const double fpp = eval(p);
            p[j] = x[j] - h[j];
            const double fpm = eval(p);
            p[i] = x[i] - h[i];
            const double fmm = eval(p);
            p[j] = x[j] + h[j];
            const double fmp = eval(p);
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            H[i * n + j] = v;
            H[j * n + i] = v;
        }
    }
    return H;
}

}  // namespace btcts
