#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

using namespace randflight;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    // An order-k rule is exact through degree 2k-1.
    for (int order : {3, 5, 8, 12, 15}) {
        const GaussRule& rule = gauss_legendre(order);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

        const int deg = 2 * order - 2;  // even degree <= 2k-1
        double integral = 0.0;
        for (int i = 0; i < order; ++i)
            integral += rule.weights[i] * std::pow(rule.nodes[i], deg);
        CHECK(integral == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-13));
    }
}

TEST_CASE("adaptive quadrature on smooth integrands") {
    auto sq = [](double x) { return x * x; };
    QuadResult r = adaptive_gk(sq, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    r = adaptive_gk([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

    r = adaptive_gk([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));

    // Oscillatory but finite: net area of 8.5 periods.
    r = adaptive_gk([](double x) { return std::sin(x); }, 0.0, 17.0 * M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("interval integration with reversed orientation convention") {
    QuadResult r = adaptive_gk([](double x) { return 2.0 * x; }, 1.0, 3.0);
    CHECK(r.value == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("sqrt edge substitutions remove inverse-sqrt singularities") {
    auto inv_sqrt_lo = [](double x) { return 1.0 / std::sqrt(x); };
    QuadResult r = integrate_interval(inv_sqrt_lo, 0.0, 1.0, EdgeBehavior::SqrtLower);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));

    auto inv_sqrt_hi = [](double x) { return 1.0 / std::sqrt(1.0 - x); };
    r = integrate_interval(inv_sqrt_hi, 0.0, 1.0, EdgeBehavior::SqrtUpper);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));

    auto both = [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); };
    r = integrate_interval(both, 0.0, 1.0, EdgeBehavior::SqrtBoth);
    CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-9));

    // A shifted interval with the same profile.
    auto shifted = [](double x) { return 1.0 / std::sqrt((x - 2.0) * (5.0 - x)); };
    r = integrate_interval(shifted, 2.0, 5.0, EdgeBehavior::SqrtBoth);
    CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("smooth integrands are unharmed by edge substitutions") {
    for (EdgeBehavior edge : {EdgeBehavior::Smooth, EdgeBehavior::SqrtLower,
                              EdgeBehavior::SqrtUpper, EdgeBehavior::SqrtBoth}) {
        QuadResult r = integrate_interval([](double x) { return std::cos(x); }, 0.0, 1.5, edge);
        CHECK(r.value == doctest::Approx(std::sin(1.5)).epsilon(1e-11));
    }
}

TEST_CASE("beta-type integrand matches the incomplete beta") {
    // integral_0^z u^{a-1}(1-u)^{b-1} du / B(a,b) against reg_inc_beta.
    const double a = 2.5, b = 1.5;
    const double log_beta = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
    auto f = [&](double u) {
        return std::exp((a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u) - log_beta);
    };
    for (double z : {0.2, 0.5, 0.8}) {
        QuadResult r = integrate_interval(f, 0.0, z, EdgeBehavior::SqrtLower);
        CHECK(r.value == doctest::Approx(reg_inc_beta(z, a, b)).epsilon(1e-9));
    }
}

TEST_CASE("non-integrable singularity raises a precision error") {
    auto pole = [](double x) { return 1.0 / x; };
    CHECK_THROWS_AS(integrate_interval(pole, 0.0, 1.0, EdgeBehavior::SqrtLower),
                    precision_error);
}

TEST_CASE("degenerate interval integrates to zero") {
    QuadResult r = adaptive_gk([](double x) { return std::exp(x); }, 2.0, 2.0);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-14));
}
