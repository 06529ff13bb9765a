#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "randflight/specfun.hpp"

using namespace randflight;

namespace {

// Integral form of the integer-order Bessel function, evaluated by Simpson's
// rule; independent of the series implementation under test.
double bessel_integral_oracle(int n, double x) {
    const int panels = 4000;
    const double h = M_PI / panels;
    auto f = [&](double theta) { return std::cos(n * theta - x * std::sin(theta)); };
    double s = f(0.0) + f(M_PI);
    for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
    return s * h / 3.0 / M_PI;
}

double binomial_coeff(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

// Tail-sum identity for integer parameters: I(z; a, b) equals the probability
// of at least a successes in a+b-1 Bernoulli(z) trials.
double inc_beta_binomial_oracle(int a, int b, double z) {
    const int n = a + b - 1;
    double s = 0.0;
    for (int k = a; k <= n; ++k)
        s += binomial_coeff(n, k) * std::pow(z, k) * std::pow(1.0 - z, n - k);
    return s;
}

}  // namespace

TEST_CASE("bessel at the origin") {
    CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bessel_j(1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(bessel_j(2.5, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("half-integer bessel against trigonometric closed forms") {
    CHECK(bessel_j(0.5, 1.0) ==
          doctest::Approx(std::sqrt(2.0 / (M_PI * 1.0)) * std::sin(1.0)).epsilon(1e-9));
    CHECK(bessel_j(0.5, 1.0) == doctest::Approx(0.6713967).epsilon(1e-6));

    for (double x = 0.25; x <= 50.0; x += 0.83) {
        const double j12 = std::sqrt(2.0 / (M_PI * x)) * std::sin(x);
        const double j32 = std::sqrt(2.0 / (M_PI * x)) * (std::sin(x) / x - std::cos(x));
        const double j52 =
            std::sqrt(2.0 / (M_PI * x)) *
            ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
        CHECK(bessel_j(0.5, x) == doctest::Approx(j12).epsilon(1e-9));
        CHECK(bessel_j(1.5, x) == doctest::Approx(j32).epsilon(1e-9));
        CHECK(bessel_j(2.5, x) == doctest::Approx(j52).epsilon(1e-9));
        // One more recurrence step done by hand: J_{7/2} = (5/x) J_{5/2} - J_{3/2}.
        const double j72 = 5.0 / x * j52 - j32;
        CHECK(bessel_j(3.5, x) == doctest::Approx(j72).epsilon(5e-9));
    }
}

TEST_CASE("integer bessel against the cosine-integral oracle") {
    for (int n = 0; n <= 3; ++n) {
        for (double x : {0.3, 1.0, 2.7, 5.0, 11.0, 20.0, 35.0}) {
            const double want = bessel_integral_oracle(n, x);
            CHECK(bessel_j(n, x) == doctest::Approx(want).epsilon(5e-10));
        }
    }
}

TEST_CASE("bessel rejects out-of-contract input") {
    CHECK_THROWS_AS(bessel_j(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0.0, std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    // Orders off the integer/half-integer grid have no large-argument path.
    CHECK_THROWS_AS(bessel_j(0.25, 300.0), precision_error);
}

TEST_CASE("mittag-leffler special parameter identities") {
    CHECK(mittag_leffler(1.0, 1.0, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
    CHECK(mittag_leffler(0.5, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mittag_leffler(1.0, 2.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-9));

    for (double x = 0.0; x <= 20.0; x += 1.7) {
        CHECK(mittag_leffler(1.0, 1.0, x) == doctest::Approx(std::exp(x)).epsilon(1e-9));
        if (x > 0.0) {
            CHECK(mittag_leffler(1.0, 2.0, x) ==
                  doctest::Approx((std::exp(x) - 1.0) / x).epsilon(1e-9));
            CHECK(mittag_leffler(2.0, 1.0, x) ==
                  doctest::Approx(std::cosh(std::sqrt(x))).epsilon(1e-9));
        }
    }
}

TEST_CASE("incomplete beta basics") {
    CHECK(reg_inc_beta(1.0, 3.7, 2.2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reg_inc_beta(0.0, 3.7, 2.2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(reg_inc_beta(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(reg_inc_beta(0.5, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    // The tail-sum arithmetic spelled out: C(3,2) z^2 (1-z) + C(3,3) z^3 at z = 1/2.
    CHECK(inc_beta_binomial_oracle(2, 2, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(reg_inc_beta(-0.1, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_beta(1.1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("incomplete beta reflection symmetry") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> uz(0.0, 1.0), uab(0.1, 9.0);
    for (int i = 0; i < 500; ++i) {
        const double z = uz(gen), a = uab(gen), b = uab(gen);
        CHECK(reg_inc_beta(z, a, b) + reg_inc_beta(1.0 - z, b, a) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("incomplete beta equals binomial tail sums for integer parameters") {
    std::mt19937_64 gen(77);
    std::uniform_int_distribution<int> uab(1, 12);
    for (int i = 0; i < 200; ++i) {
        const int a = uab(gen), b = uab(gen);
        for (double z = 0.05; z < 1.0; z += 0.09) {
            const double want = inc_beta_binomial_oracle(a, b, z);
            CHECK(reg_inc_beta(z, a, b) == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("monotonicity of the incomplete beta in z") {
    double prev = -1.0;
    for (double z = 0.0; z <= 1.0; z += 0.01) {
        const double v = reg_inc_beta(std::min(z, 1.0), 2.3, 4.1);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("log gamma against the standard library") {
    for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.3, 7.0, 12.5, 40.0, 143.5}) {
        CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
    }
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("lower incomplete gamma identities") {
    for (double x : {0.1, 0.7, 1.5, 3.0, 8.0}) {
        CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-11));
        CHECK(reg_lower_gamma(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-11));
    }
    CHECK(reg_lower_gamma(3.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
}
