#include <cmath>
#include <stdexcept>

#include "randflight/analytic.hpp"
#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

double hyperplane_density(const Point& x, const FlightParams& params, int n,
                          const Hyperplane& plane) {
    params.validate();
    if (n < 1) throw std::invalid_argument("conditional density needs n >= 1");
    double r = x.norm();
    if (params.t <= plane.first_contact_time(params.c))
        return free_density_dirichlet(r, params, n);
    HalfspaceRegion region = classify_halfspace_region(x, plane, params.ct());
    double value = 0.0;
    if (region.has(HalfspaceRegion::L)) value += free_density_dirichlet(r, params, n);
    if (region.has(HalfspaceRegion::V)) {
        Point mirrored = reflect_in_hyperplane(x, plane);
        value += free_density_dirichlet(mirrored.norm(), params, n);
    }
    return value;
}

HyperplaneUncondValue hyperplane_uncond_density_ml(const Point& x, const FlightParams& params,
                                                   double lambda, const Hyperplane& plane) {
    params.validate();
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (params.t <= plane.first_contact_time(params.c))
        throw std::invalid_argument("reflected law needs t greater than the contact time");
    HyperplaneUncondValue out;
    double lt = lambda * params.t;
    out.boundary_mass =
        1.0 / (mittag_leffler(params.ml_alpha(), 0.5 * params.d, lt) * gamma_fn(0.5 * params.d));
    HalfspaceRegion region = classify_halfspace_region(x, plane, params.ct());
    if (region.has(HalfspaceRegion::L))
        out.density += uncond_free_density_ml(x.norm(), params, lambda);
    if (region.has(HalfspaceRegion::V)) {
        Point mirrored = reflect_in_hyperplane(x, plane);
        out.density += uncond_free_density_ml(mirrored.norm(), params, lambda);
    }
    return out;
}

namespace {

double area_s(int dim) {
    // Surface area of the unit sphere in R^{dim+1}; area_s(0) = 2 covers the
    // planar two-point case of the angular reduction.
    return 2.0 * std::pow(M_PI, 0.5 * (dim + 1)) / gamma_fn(0.5 * (dim + 1));
}

// Angular measure of the polar cap {u >= u0} under (1-u^2)^{(d-3)/2} du.
double cap_angle(double u0, int d) {
    double full = std::exp(log_gamma(0.5) + log_gamma(0.5 * (d - 1)) - log_gamma(0.5 * d));
    if (u0 >= 1.0) return 0.0;
    if (u0 <= -1.0) return full;
    double tail = 0.5 * full * (1.0 - reg_inc_beta(u0 * u0, 0.5, 0.5 * (d - 1)));
    return u0 >= 0.0 ? tail : full - tail;
}

}  // namespace

double ball_cap_integral(const std::function<double(double)>& f, int d, double b, double r) {
    if (d < 2) throw std::invalid_argument("ball_cap_integral: d must be >= 2");
    if (b < 0.0) throw std::invalid_argument("ball_cap_integral: b must be nonnegative");
    if (r <= b) return 0.0;
    double ring = area_s(d - 2);
    auto integrand = [&](double s) {
        return std::pow(s, d - 1.0) * f(s) * cap_angle(b / s, d);
    };
    return ring * integrate_interval(integrand, b, r, EdgeBehavior::SqrtUpper, 1e-10, 1e-9).value;
}

double mirror_lobe_integral(const std::function<double(double)>& f, int d, double ct, double b,
                            double r) {
    if (d < 2) throw std::invalid_argument("mirror_lobe_integral: d must be >= 2");
    if (b <= 0.0 || ct <= 0.0) throw std::invalid_argument("b and ct must be positive");
    if (r <= 0.0) return 0.0;
    const GaussRule& gl = gauss_legendre(24);
    double ring = area_s(d - 2);

    // For a fixed colatitude theta (u = cos theta), the admissible radii are
    // the arc where the mirrored point stays inside the ball of radius ct and
    // the point itself stays below the plane and inside B_r.  The
    // substitution s = 2bu + sqrt(W) sin(phi) turns ct^2 - ||nu||^2 into
    // W cos^2(phi), which tames the inverse-sqrt edge of the integrand.
    auto slice = [&](double theta) {
        double u = std::cos(theta);
        double W = ct * ct - 4.0 * b * b * (1.0 - u * u);
        if (W <= 0.0) return 0.0;
        double sw = std::sqrt(W);
        double center = 2.0 * b * u;
        double s_lo = std::max(0.0, center - sw);
        double s_hi = std::min(r, center + sw);
        if (u > 0.0) s_hi = std::min(s_hi, b / u);
        if (s_hi <= s_lo) return 0.0;
        double phi_lo = std::asin(std::max(-1.0, std::min(1.0, (s_lo - center) / sw)));
        double phi_hi = std::asin(std::max(-1.0, std::min(1.0, (s_hi - center) / sw)));
        double acc = 0.0;
        for (int i = 0; i < 24; ++i) {
            double phi = 0.5 * (phi_lo + phi_hi) + 0.5 * (phi_hi - phi_lo) * gl.nodes[i];
            double s = center + sw * std::sin(phi);
            double mirror2 = ct * ct - W * std::cos(phi) * std::cos(phi);
            if (mirror2 <= 0.0) continue;
            acc += 0.5 * (phi_hi - phi_lo) * gl.weights[i] * std::pow(s, d - 1.0) *
                   f(std::sqrt(mirror2)) * sw * std::cos(phi);
        }
        double sin_theta = std::sin(theta);
        return std::pow(sin_theta, d - 2.0) * acc;
    };
    QuadResult outer = adaptive_gk(slice, 0.0, M_PI, 1e-10, 1e-8, 34);
    return ring * outer.value;
}

double hyperplane_distance_cdf(double r, const FlightParams& params, int n, double b) {
    params.validate();
    if (n < 1) throw std::invalid_argument("hyperplane_distance_cdf: n must be >= 1");
    if (b <= 0.0) throw std::invalid_argument("hyperplane_distance_cdf: b must be positive");
    double ct = params.ct();
    if (params.t <= b / params.c)
        throw std::invalid_argument("reflected law needs t greater than the contact time");
    if (r <= 0.0 || r >= ct)
        throw std::domain_error("hyperplane_distance_cdf: r must lie in (0, ct)");
    FlightParams p = params;
    auto point_density = [p, n](double s) { return free_density_dirichlet(s, p, n); };
    double value = free_radial_cdf(r, params, n);
    if (r > b) value -= ball_cap_integral(point_density, params.d, b, r);
    value += mirror_lobe_integral(point_density, params.d, ct, b, r);
    return value;
}

}  // namespace randflight
