#include <cmath>
#include <stdexcept>

#include "randflight/analytic.hpp"
#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

namespace {

// Series over the deviation count of conditional densities weighted by the
// Mittag-Leffler count pmf.  Ground truth for every unconditional law here;
// closed forms are regression anchors only.
double free_ml_series(double r, const FlightParams& params, double lambda) {
    double ct = params.ct();
    if (r <= 0.0 || r >= ct) return 0.0;
    double alpha = params.ml_alpha();
    double beta0 = 0.5 * params.d;
    double lt = lambda * params.t;
    double log_lt = std::log(lt);
    double log_norm = std::log(mittag_leffler(alpha, beta0, lt));
    double base = ct * ct - r * r;
    double log_base = std::log(base);
    double log_pi = std::log(M_PI);
    double log_ct = std::log(ct);
    double sum = 0.0;
    double prev = 0.0;
    for (int n = 1; n <= 10000; ++n) {
        double na = n * alpha;
        double log_term = log_gamma(na + alpha + 0.5 * params.h) - log_gamma(na) +
                          (na - 1.0) * log_base - 0.5 * params.d * log_pi -
                          (2.0 * (n + 1) * alpha + params.h - 2.0) * log_ct + n * log_lt -
                          log_gamma(na + beta0) - log_norm;
        double term = std::exp(log_term);
        sum += term;
        if (n > 3 && term < prev && term < 1e-16 * (sum + 1e-300)) return sum;
        prev = term;
    }
    throw precision_error("count-weighted density series did not converge");
}

double fold_edge(const FlightParams& params, double R) { return R * R / params.ct(); }

// Continuous-part CDF by quadrature of the radial density.  The image term
// switches on at the fold edge with an integrable power singularity when the
// lowest-order exponent is negative; the sqrt substitution soaks it up.
double radial_cdf_quadrature(const std::function<double(double)>& radial_density, double r,
                             double edge) {
    if (r <= 0.0) return 0.0;
    double value = 0.0;
    double split = std::min(r, edge);
    if (split > 0.0) {
        value += integrate_interval(radial_density, 0.0, split, EdgeBehavior::SqrtUpper, 1e-9, 1e-9)
                     .value;
    }
    if (r > edge) {
        value +=
            integrate_interval(radial_density, edge, r, EdgeBehavior::SqrtLower, 1e-9, 1e-9).value;
    }
    return value;
}

}  // namespace

double uncond_free_density_ml(double r, const FlightParams& params, double lambda) {
    params.validate();
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    return free_ml_series(r, params, lambda);
}

double uncond_free_density_ml_closed(double r, const FlightParams& params, double lambda) {
    params.validate();
    if (params.d - params.h != 2)
        throw std::domain_error("closed exponential form needs d - h = 2");
    double ct = params.ct();
    if (r <= 0.0 || r >= ct) return 0.0;
    double lt = lambda * params.t;
    double norm = mittag_leffler(1.0, 0.5 * params.d, lt);
    double gamma_exp = lt * (1.0 - (r * r) / (ct * ct));
    return lt * std::exp(gamma_exp) /
           (norm * std::pow(M_PI, 0.5 * params.d) * std::pow(ct, params.d));
}

double uncond_reflected_point_density_ml(double r, const FlightParams& params, double lambda,
                                         double R) {
    params.validate();
    if (R <= 0.0) throw std::invalid_argument("R must be positive");
    if (params.t <= R / params.c) return free_ml_series(r, params, lambda);
    if (r <= 0.0 || r > R) return 0.0;
    double value = free_ml_series(r, params, lambda);
    if (r > fold_edge(params, R)) {
        double image = R * R / r;
        value += std::pow(R / r, 2.0 * params.d) * free_ml_series(image, params, lambda);
    }
    return value;
}

RadialLaw uncond_reflected_density_ml(const FlightParams& params, double lambda, double R) {
    params.validate();
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (R <= 0.0) throw std::invalid_argument("R must be positive");
    if (params.t <= R / params.c)
        throw std::invalid_argument("reflected law needs t > R/c");
    RadialLaw law;
    law.r_max = R;
    double area = unit_sphere_area(params.d);
    FlightParams p = params;
    auto radial = [p, lambda, R, area](double r) {
        if (r <= 0.0 || r > R) return 0.0;
        return area * std::pow(r, p.d - 1.0) * uncond_reflected_point_density_ml(r, p, lambda, R);
    };
    law.density = radial;
    double edge = fold_edge(params, R);
    law.cdf = [radial, edge](double r) { return radial_cdf_quadrature(radial, r, edge); };
    double lt = lambda * params.t;
    double mass =
        1.0 / (mittag_leffler(params.ml_alpha(), 0.5 * params.d, lt) * gamma_fn(0.5 * params.d));
    law.atom = RadialAtom{edge, mass};
    return law;
}

double uncond_free_density_poisson(double r, const FlightParams& params, double lambda) {
    params.validate();
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    bool planar = (params.d == 2 && params.h == 1);
    bool four_dim = (params.d == 4 && params.h == 2);
    if (!planar && !four_dim)
        throw std::domain_error("Poisson closed forms exist for (d,h) = (2,1) and (4,2) only");
    double ct = params.ct();
    if (r <= 0.0 || r >= ct) return 0.0;
    double c = params.c;
    double t = params.t;
    if (planar) {
        double root = std::sqrt(ct * ct - r * r);
        return lambda * std::exp(-lambda * t + (lambda / c) * root) / (2.0 * M_PI * c * root);
    }
    double c2t = c * c * t;
    return lambda / (std::pow(c, 4) * std::pow(t, 3) * M_PI * M_PI) *
           std::exp(-lambda * r * r / c2t) * (2.0 + (lambda / c2t) * (ct * ct - r * r));
}

RadialLaw uncond_reflected_poisson(const FlightParams& params, double lambda, double R) {
    params.validate();
    if (R <= 0.0) throw std::invalid_argument("R must be positive");
    if (params.t <= R / params.c)
        throw std::invalid_argument("reflected law needs t > R/c");
    // Probe once so unsupported (d, h) pairs fail fast.
    (void)uncond_free_density_poisson(0.5 * params.ct(), params, lambda);
    RadialLaw law;
    law.r_max = R;
    double area = unit_sphere_area(params.d);
    FlightParams p = params;
    auto radial = [p, lambda, R, area](double r) {
        if (r <= 0.0 || r > R) return 0.0;
        double value = uncond_free_density_poisson(r, p, lambda);
        double edge = R * R / p.ct();
        if (r > edge) {
            double image = R * R / r;
            value += std::pow(R / r, 2.0 * p.d) * uncond_free_density_poisson(image, p, lambda);
        }
        return area * std::pow(r, p.d - 1.0) * value;
    };
    law.density = radial;
    double edge = fold_edge(params, R);
    law.cdf = [radial, edge](double r) { return radial_cdf_quadrature(radial, r, edge); };
    law.atom = RadialAtom{edge, std::exp(-lambda * params.t)};
    return law;
}

double cdf_distance_reflected_poisson_2d(double r, double c, double t, double lambda, double R) {
    if (c <= 0.0 || t <= 0.0 || lambda <= 0.0 || R <= 0.0)
        throw std::domain_error("parameters must be positive");
    if (t <= R / c) throw std::domain_error("reflected law needs t > R/c");
    if (r <= 0.0 || r > R) throw std::domain_error("r must lie in (0, R]");
    double ct = c * t;
    double value = 1.0 - std::exp(-lambda * t + (lambda / c) * std::sqrt(ct * ct - r * r));
    // Right-continuous at the fold radius: the image term there equals the
    // atom mass e^{-lambda t}, so the closed branch keeps F(r) = P(D <= r).
    if (r >= R * R / ct) {
        double image2 = std::pow(R, 4) / (r * r);
        value += std::exp(-lambda * t + (lambda / c) * std::sqrt(ct * ct - image2));
    }
    return value;
}

}  // namespace randflight
