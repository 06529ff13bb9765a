#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "randflight/analytic.hpp"
#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

using namespace randflight;

namespace {

FlightParams make_params(int d, int h, double c, double t) {
    FlightParams p;
    p.d = d;
    p.h = h;
    p.c = c;
    p.t = t;
    return p;
}

// The density carries a factor (c^2 t^2 - r^2)^{n(d-h)/2 - 1}; for half-integer
// exponents the boundary needs the sqrt-aware quadrature mode.
EdgeBehavior upper_edge(int d, int h, int n) {
    return (n * (d - h)) % 2 == 1 ? EdgeBehavior::SqrtUpper : EdgeBehavior::Smooth;
}

}  // namespace

TEST_CASE("ball volume and sphere area basics") {
    CHECK(ball_volume(2, 1.0) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(ball_volume(3, 1.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(ball_volume(4, 2.0) == doctest::Approx(0.5 * M_PI * M_PI * 16.0).epsilon(1e-14));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("four parameter choices give the uniform ball law") {
    struct Case {
        int d, h, n;
    };
    for (Case cs : std::vector<Case>{{2, 1, 2}, {3, 1, 1}, {3, 2, 2}, {4, 2, 1}}) {
        for (double c : {1.0, 2.0}) {
            for (double t : {1.0, 1.7}) {
                FlightParams p = make_params(cs.d, cs.h, c, t);
                const double want = 1.0 / ball_volume(cs.d, c * t);
                for (double frac : {0.05, 0.3, 0.62, 0.9, 0.999}) {
                    const double r = frac * c * t;
                    CHECK(free_density_dirichlet(r, p, cs.n) ==
                          doctest::Approx(want).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("pinned point-density values") {
    // d=2, two deviations, c=t=1: flat at 1/pi, radial density 2r.
    FlightParams p2 = make_params(2, 1, 1.0, 1.0);
    CHECK(free_density_dirichlet(0.4, p2, 2) == doctest::Approx(1.0 / M_PI).epsilon(1e-13));
    CHECK(free_radial_density(0.4, p2, 2) == doctest::Approx(0.8).epsilon(1e-13));

    // d=4, h=2, one deviation, c=t=1: flat at 2/pi^2.
    FlightParams p4 = make_params(4, 2, 1.0, 1.0);
    CHECK(free_density_dirichlet(0.7, p4, 1) ==
          doctest::Approx(2.0 / (M_PI * M_PI)).epsilon(1e-13));

    // d=3, h=1, one deviation: radial density 3 r^2 / (ct)^3.
    FlightParams p3 = make_params(3, 1, 1.0, 2.0);
    CHECK(free_radial_density(1.2, p3, 1) ==
          doctest::Approx(3.0 * 1.2 * 1.2 / 8.0).epsilon(1e-13));

    // Density vanishes at the boundary once the exponent is positive.
    CHECK(free_density_dirichlet(2.0 * (1.0 - 1e-13), p3, 3) ==
          doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("radial cdf is the regularized incomplete beta in r^2/(ct)^2") {
    for (auto [d, h] : {std::pair{2, 1}, {3, 1}, {4, 1}, {3, 2}, {5, 2}}) {
        for (int n : {1, 2, 4}) {
            FlightParams p = make_params(d, h, 1.3, 0.9);
            const double a = 0.5 * d, b = 0.5 * n * (d - h);
            for (double frac : {0.1, 0.33, 0.5, 0.77, 0.95}) {
                const double r = frac * p.ct();
                const double z = r * r / (p.ct() * p.ct());
                CHECK(free_radial_cdf(r, p, n) ==
                      doctest::Approx(reg_inc_beta(z, a, b)).epsilon(1e-11));
            }
            CHECK(free_radial_cdf(p.ct(), p, n) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("radial density integrates to one") {
    for (auto [d, h] : {std::pair{2, 1}, {3, 1}, {5, 1}, {3, 2}, {4, 2}, {6, 2}}) {
        for (int n : {1, 2, 3, 5}) {
            FlightParams p = make_params(d, h, 1.0, 1.4);
            auto f = [&](double r) { return free_radial_density(r, p, n); };
            const double mass =
                integrate_interval(f, 0.0, p.ct(), upper_edge(d, h, n)).value;
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("radial density is the derivative of the cdf") {
    FlightParams p = make_params(3, 1, 1.0, 2.0);
    for (int n : {1, 2, 4}) {
        for (double r : {0.3, 0.9, 1.5}) {
            const double eps = 1e-5;
            const double num =
                (free_radial_cdf(r + eps, p, n) - free_radial_cdf(r - eps, p, n)) / (2.0 * eps);
            CHECK(free_radial_density(r, p, n) == doctest::Approx(num).epsilon(1e-7));
        }
    }
}

TEST_CASE("oscillatory-integral route agrees with the closed density") {
    // Independent evaluation through the characteristic function.
    struct Case {
        int d, h, n;
        double tol;
    };
    for (Case cs : std::vector<Case>{{2, 1, 2, 1e-4}, {3, 1, 1, 1e-4}, {4, 2, 1, 1e-3}}) {
        FlightParams p = make_params(cs.d, cs.h, 1.0, 2.0);
        for (int i = 1; i <= 8; ++i) {
            const double r = p.ct() * i / 9.0;
            const double closed = free_density_dirichlet(r, p, cs.n);
            const double osc = free_density_bessel(r, p, cs.n, SimplexLaw::DirichletH);
            CHECK(osc == doctest::Approx(closed).epsilon(cs.tol));
        }
    }
}

TEST_CASE("uniform-simplex route coincides when the shape parameter is one") {
    // d = 2h makes the displacement law itself uniform on the simplex, so the
    // two step-law variants must produce the same density.
    for (auto [d, h] : {std::pair{2, 1}, {4, 2}}) {
        FlightParams p = make_params(d, h, 1.0, 1.5);
        for (double frac : {0.25, 0.6, 0.85}) {
            const double r = frac * p.ct();
            const double a = free_density_bessel(r, p, 2, SimplexLaw::DirichletH);
            const double b = free_density_bessel(r, p, 2, SimplexLaw::UniformSimplex);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("guards reject out-of-range arguments") {
    FlightParams p = make_params(3, 1, 1.0, 1.0);
    CHECK_THROWS_AS(free_density_dirichlet(0.5, p, 0), std::invalid_argument);
    CHECK_THROWS_AS(free_radial_density(-0.1, p, 1), std::invalid_argument);
    CHECK_THROWS_AS(free_density_bessel(1.5, p, 1, SimplexLaw::DirichletH),
                    std::invalid_argument);
    CHECK_THROWS_AS(free_density_bessel(0.5, p, 7, SimplexLaw::DirichletH), precision_error);
}
