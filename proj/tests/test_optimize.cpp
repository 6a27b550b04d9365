#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "btcts/errors.hpp"
#include "btcts/optimize.hpp"
#include "doctest.h"

using namespace btcts;

namespace {

double quadratic(const std::vector<double>& x) {
    const double a = x[0] - 3.0;
    const double b = x[1] + 1.0;
    return a * a + b * b;
}

double rosenbrock(const std::vector<double>& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
}

}  // namespace

TEST_CASE("nelder-mead: quadratic bowl") {
    // The stopping rule bounds the simplex f-spread, so on a quadratic the
    // x-error scales like sqrt(f): expect ~1e-5 in x, not machine epsilon.
    const OptimResult r = nelder_mead(quadratic, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.x_opt[0] == doctest::Approx(3.0).scale(1.0).epsilon(1e-4));
    CHECK(r.x_opt[1] == doctest::Approx(-1.0).scale(1.0).epsilon(1e-4));
    CHECK(r.f_opt < 1e-8);
    CHECK(r.simplex_spread <= 1e-10);
    CHECK(r.iterations > 0);
}

TEST_CASE("nelder-mead: rosenbrock valley from the classic start") {
    const OptimResult r = nelder_mead(rosenbrock, {-1.2, 1.0});
    CHECK(r.converged);
    CHECK(r.x_opt[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.x_opt[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.f_opt < 1e-8);
}

TEST_CASE("nelder-mead: never ends above the starting value") {
    const std::vector<std::vector<double>> starts = {
        {0.0, 0.0}, {10.0, -7.0}, {-1.2, 1.0}, {0.001, 0.001}};
    for (const auto& x0 : starts) {
        const OptimResult r = nelder_mead(rosenbrock, x0);
        CHECK(r.f_opt <= rosenbrock(x0));
    }
}

TEST_CASE("nelder-mead: restart from the optimum cannot get worse") {
    const OptimResult first = nelder_mead(rosenbrock, {-1.2, 1.0});
    const OptimResult second = nelder_mead(rosenbrock, first.x_opt);
    CHECK(second.f_opt <= first.f_opt + 1e-12);
}

TEST_CASE("nelder-mead: one-dimensional problems work") {
    const OptimResult r =
        nelder_mead([](const std::vector<double>& x) { return (x[0] - 2.5) * (x[0] - 2.5); },
                    {0.0});
    CHECK(r.converged);
    CHECK(r.x_opt[0] == doctest::Approx(2.5).scale(1.0).epsilon(1e-3));
    CHECK(r.f_opt < 1e-6);
}

TEST_CASE("nelder-mead: non-finite regions repel the simplex") {
    // The objective is only defined for x >= -0.05; the minimizer must stay
    // inside the valid region and still find the minimum near zero.
    auto guarded = [](const std::vector<double>& x) {
        if (x[0] < -0.05) return std::numeric_limits<double>::quiet_NaN();
        return x[0] * x[0];
    };
    const OptimResult r = nelder_mead(guarded, {1.0});
    CHECK(r.x_opt[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-5));
    CHECK(r.f_opt < 1e-8);
}

TEST_CASE("nelder-mead: guards") {
    CHECK_THROWS_AS(nelder_mead(quadratic, {}), ConfigError);
    CHECK_THROWS_AS(
        nelder_mead([](const std::vector<double>&) {
            return std::numeric_limits<double>::quiet_NaN();
        },
                    {1.0}),
        ObjectiveNonFiniteAtStart);
}

TEST_CASE("numerical hessian: quadratic form recovers its matrix") {
    // f(x) = x' A x / 2 with A = [[2, 0.5], [0.5, 3]]; Hessian == A.
    auto f = [](const std::vector<double>& x) {
        return 0.5 * (2.0 * x[0] * x[0] + 3.0 * x[1] * x[1]) + 0.5 * x[0] * x[1];
    };
    const std::vector<double> H = numerical_hessian(f, {0.3, -0.7});
    REQUIRE(H.size() == 4);  // row-major 2x2
    CHECK(H[0] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(H[3] == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(H[1] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(H[1] == H[2]);
}

TEST_CASE("numerical hessian: curvature of a quartic") {
    // f(x) = x^4, f''(x) = 12 x^2 = 48 at x = 2.
    auto f = [](const std::vector<double>& x) { return x[0] * x[0] * x[0] * x[0]; };
    const std::vector<double> H = numerical_hessian(f, {2.0});
    REQUIRE(H.size() == 1);
    CHECK(H[0] == doctest::Approx(48.0).epsilon(1e-4));
}

TEST_CASE("numerical hessian: guards") {
    auto f = [](const std::vector<double>& x) { return x[0] * x[0]; };
    CHECK_THROWS_AS(numerical_hessian(f, {}), ConfigError);
    auto bad = [](const std::vector<double>&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_AS(numerical_hessian(bad, {1.0}), NonFiniteEvaluation);
}
