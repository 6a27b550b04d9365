#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace btcts {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
    std::vector<double> x_opt;
    double f_opt = 0.0;
    unsigned iterations = 0;
    bool converged = false;
    double simplex_spread = 0.0;  // max-min objective value over the final simplex
};

/// Derivative-free Nelder-Mead minimization with the standard reflection,
/// expansion, contraction and shrink coefficients (1, 2, 0.5, 0.5). The
/// initial simplex perturbs each coordinate of x0 by max(0.05*|x0_i|,
/// 0.00025). Non-finite objective values are treated as +infinity so the
/// simplex backs away from them; a non-finite value at x0 itself throws
/// ObjectiveNonFiniteAtStart. Convergence means the objective spread over
/// the simplex fell below tol.
OptimResult nelder_mead(const Objective& f, std::vector<double> x0, double tol = 1e-10,
                        unsigned max_iter = 20000);

/// Symmetric numerical Hessian by central differences with per-coordinate
/// step h_i = max(1e-4*|x_i|, 1e-5). Returned row-major, n*n entries.
std::vector<double> numerical_hessian(const Objective& f, const std::vector<double>& x);

}  // namespace btcts
