#include "randflight/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

double unit_sphere_area(int d) {
    if (d < 1) throw std::invalid_argument("unit_sphere_area: d must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * d) / gamma_fn(0.5 * d);
}

double ball_volume(int d, double r) {
    if (d < 1) throw std::invalid_argument("ball_volume: d must be >= 1");
    return std::pow(M_PI, 0.5 * d) * std::pow(r, d) / gamma_fn(0.5 * d + 1.0);
}

namespace {

// Shared exponents of the conditional free density.
struct FreeShape {
    double beta;       // exponent of (c^2 t^2 - r^2)
    double log_front;  // log of the constant factor
};

FreeShape free_shape(const FlightParams& params, int n) {
    double dh = params.d - params.h;
    double beta = 0.5 * n * dh - 1.0;
    double ct = params.ct();
    double log_front = log_gamma(0.5 * (n + 1) * dh + 0.5 * params.h) - log_gamma(0.5 * n * dh) -
                       0.5 * params.d * std::log(M_PI) -
                       ((n + 1) * dh + params.h - 2.0) * std::log(ct);
    return {beta, log_front};
}

void require_n_positive(int n) {
    if (n < 1) throw std::invalid_argument("conditional density needs n >= 1");
}

}  // namespace

double free_density_dirichlet(double r, const FlightParams& params, int n) {
    params.validate();
    require_n_positive(n);
    if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
    double ct = params.ct();
    if (r >= ct) return 0.0;
    FreeShape s = free_shape(params, n);
    double base = ct * ct - r * r;
    return std::exp(s.log_front) * std::pow(base, s.beta);
}

double free_radial_density(double r, const FlightParams& params, int n) {
    double p = free_density_dirichlet(r, params, n);
    if (p == 0.0) return 0.0;
    return unit_sphere_area(params.d) * std::pow(r, params.d - 1.0) * p;
}

double free_radial_cdf(double r, const FlightParams& params, int n) {
    params.validate();
    require_n_positive(n);
    double ct = params.ct();
    if (r <= 0.0) return 0.0;
    if (r >= ct) return 1.0;
    double z = (r * r) / (ct * ct);
    return reg_inc_beta(z, 0.5 * params.d, 0.5 * n * (params.d - params.h));
}

double reflected_density_sphere(double r, const FlightParams& params, int n, double R) {
    params.validate();
    require_n_positive(n);
    if (R <= 0.0) throw std::invalid_argument("R must be positive");
    double ct = params.ct();
    if (params.t <= R / params.c) return free_density_dirichlet(r, params, n);
    if (r <= 0.0 || r > R) return 0.0;
    double value = free_density_dirichlet(r, params, n);
    double fold_edge = R * R / ct;
    if (r > fold_edge) {
        double image = R * R / r;
        value += std::pow(R / r, 2.0 * params.d) * free_density_dirichlet(image, params, n);
    }
    return value;
}

double reflected_radial_density(double r, const FlightParams& params, int n, double R) {
    double p = reflected_density_sphere(r, params, n, R);
    if (p == 0.0) return 0.0;
    return unit_sphere_area(params.d) * std::pow(r, params.d - 1.0) * p;
}

double reflected_radial_cdf(double r, const FlightParams& params, int n, double R) {
    params.validate();
    require_n_positive(n);
    if (R <= 0.0) throw std::invalid_argument("R must be positive");
    if (r <= 0.0 || r > R) throw std::domain_error("reflected_radial_cdf: r must lie in (0, R]");
    double ct = params.ct();
    if (params.t <= R / params.c) return free_radial_cdf(r, params, n);
    double a = 0.5 * params.d;
    double b = 0.5 * n * (params.d - params.h);
    double value = reg_inc_beta(std::min(1.0, (r * r) / (ct * ct)), a, b);
    double fold_edge = R * R / ct;
    if (r > fold_edge) {
        double z = std::pow(R * R / (ct * r), 2.0);
        value += 1.0 - reg_inc_beta(std::min(1.0, z), a, b);
    }
    return value;
}

double reflected_radial_cdf_binomial(double r, const FlightParams& params, int n, double R) {
    params.validate();
    require_n_positive(n);
    if (params.h != 2 || params.d % 2 != 0)
        throw std::invalid_argument("binomial CDF path needs h = 2 and even d");
    if (r <= 0.0 || r > R) throw std::domain_error("r must lie in (0, R]");
    double ct = params.ct();
    int a = params.d / 2;
    int b = n * (params.d - 2) / 2;
    int trials = a + b - 1;
    // I(z; a, b) = P{Bin(trials, z) >= a} for integer a, b.
    auto binom_tail = [&](double z) {
        double sum = 0.0;
        for (int j = a; j <= trials; ++j) {
            double log_term = log_gamma(trials + 1.0) - log_gamma(j + 1.0) -
                              log_gamma(trials - j + 1.0) + j * std::log(z) +
                              (trials - j) * std::log1p(-z);
            sum += std::exp(log_term);
        }
        return sum;
    };
    if (params.t <= R / params.c) return binom_tail((r * r) / (ct * ct));
    double value = binom_tail(std::min(1.0, (r * r) / (ct * ct)));
    double fold_edge = R * R / ct;
    if (r > fold_edge) value += 1.0 - binom_tail(std::min(1.0, std::pow(R * R / (ct * r), 2.0)));
    return value;
}

double reflected_moment(int m, const FlightParams& params, int n, double R) {
    params.validate();
    require_n_positive(n);
    if (m < 0) throw std::invalid_argument("moment order must be >= 0");
    if (R <= 0.0) throw std::invalid_argument("R must be positive");
    double ct = params.ct();
    double a = 0.5 * params.d;
    double b = 0.5 * n * (params.d - params.h);
    if (params.t <= R / params.c) {
        // No reflection: plain beta-ratio moment of the free distance.
        return std::pow(ct, m) *
               std::exp(log_gamma(a + 0.5 * m) + log_gamma(a + b) - log_gamma(a) -
                        log_gamma(a + b + 0.5 * m));
    }
    if (params.d > m) {
        double z = (R * R) / (ct * ct);
        double lbab = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
        double plus = std::exp(log_gamma(a + 0.5 * m) + log_gamma(b) - log_gamma(a + b + 0.5 * m) -
                               lbab);
        double minus = std::exp(log_gamma(a - 0.5 * m) + log_gamma(b) -
                                log_gamma(a + b - 0.5 * m) - lbab);
        return std::pow(ct, m) * plus * reg_inc_beta(z, a + 0.5 * m, b) +
               std::pow(R, 2.0 * m) * std::pow(ct, -m) * minus *
                   (1.0 - reg_inc_beta(z, a - 0.5 * m, b));
    }
    auto integrand = [&](double r) {
        return std::pow(r, m) * reflected_radial_density(r, params, n, R);
    };
    // The integrand jumps at the fold edge and can have a sqrt edge at r = R
    // wherever R is close to ct; split there and treat edges conservatively.
    double fold_edge = R * R / ct;
    QuadResult lo = integrate_interval(integrand, 0.0, fold_edge, EdgeBehavior::Smooth, 1e-10, 1e-10);
    QuadResult hi = integrate_interval(integrand, fold_edge, R, EdgeBehavior::SqrtBoth, 1e-10, 1e-10);
    return lo.value + hi.value;
}

}  // namespace randflight
