#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "randflight/geometry.hpp"
#include "randflight/sampling.hpp"

namespace randflight {

// Distance law bundle: density and CDF of the continuous part on (0, r_max],
// plus an optional point mass.  The CDF excludes the atom, so for laws with a
// singular component cdf(r_max) + atom.mass = 1.
struct RadialAtom {
    double location = 0.0;
    double mass = 0.0;
};

struct RadialLaw {
    std::function<double(double)> density;
    std::function<double(double)> cdf;
    std::optional<RadialAtom> atom;
    double r_max = 0.0;
};

// Evaluated law on a radius grid; carrier for CLI output.
struct DensityGrid {
    std::vector<double> radii;
    std::vector<double> density;
    std::vector<double> cdf;
    FlightParams params;
    std::string law_id;
    std::optional<RadialAtom> atom;
};

// Surface area of the unit sphere in R^d and volume of the radius-r ball.
double unit_sphere_area(int d);
double ball_volume(int d, double r);

// ---- Conditional laws, free flight ----

// Density at any point with ||x|| = r, for n >= 1 changes of direction under
// the h-variant Dirichlet displacement law; support (0, ct).
double free_density_dirichlet(double r, const FlightParams& params, int n);

// Distance density r^{d-1} * area(S^{d-1}) * density, and its closed CDF
// I(r^2/(ct)^2; d/2, n(d-h)/2).
double free_radial_density(double r, const FlightParams& params, int n);
double free_radial_cdf(double r, const FlightParams& params, int n);

// Same density through the oscillatory integral representation (outer Bessel
// transform, inner simplex average).  Supported for n in {1,2,3}; relative
// accuracy target 1e-4 (n=1) / Monte Carlo limited ~1e-3 (n in {2,3}).
double free_density_bessel(double r, const FlightParams& params, int n, SimplexLaw steplaw);

// ---- Conditional laws, sphere-reflected ----

// Density at radius r of the flight reflected in the sphere of radius R:
// the free value inside, plus the inversion image term on (R^2/ct, R].
double reflected_density_sphere(double r, const FlightParams& params, int n, double R);
double reflected_radial_density(double r, const FlightParams& params, int n, double R);
double reflected_radial_cdf(double r, const FlightParams& params, int n, double R);

// CDF via binomial tail sums; valid for h = 2 and even d only, where both
// beta parameters are integers.  Must agree with reflected_radial_cdf.
double reflected_radial_cdf_binomial(double r, const FlightParams& params, int n, double R);

// m-th moment of the reflected distance.  Closed beta-ratio form when d > m,
// quadrature of the radial density otherwise.
double reflected_moment(int m, const FlightParams& params, int n, double R);

// ---- Unconditional laws, Mittag-Leffler weighted count ----

// Continuous-part density at ||x|| = r, free and sphere-reflected, as the
// series over n >= 1 of conditional densities against the count pmf.
double uncond_free_density_ml(double r, const FlightParams& params, double lambda);
double uncond_reflected_point_density_ml(double r, const FlightParams& params, double lambda,
                                         double R);

// Closed exponential form of the free series, valid when d - h = 2.
double uncond_free_density_ml_closed(double r, const FlightParams& params, double lambda);

// Full distance law of the reflected flight: series density, quadrature CDF,
// atom at R^2/(ct) with mass pmf(0).
RadialLaw uncond_reflected_density_ml(const FlightParams& params, double lambda, double R);

// ---- Unconditional laws, homogeneous Poisson count ----

// Closed forms for (d=2, h=1) and (d=4, h=2); density at ||x|| = r.
double uncond_free_density_poisson(double r, const FlightParams& params, double lambda);

// Reflected counterpart with atom mass e^{-lambda t} at R^2/(ct).
RadialLaw uncond_reflected_poisson(const FlightParams& params, double lambda, double R);

// Distance CDF of the reflected planar Poisson flight, in closed form.
double cdf_distance_reflected_poisson_2d(double r, double c, double t, double lambda, double R);

// ---- Hyperplane-reflected laws ----

// Density at a point of the flight reflected in the hyperplane: free value on
// the near side plus the mirror-image value where the image set overlaps.
double hyperplane_density(const Point& x, const FlightParams& params, int n,
                          const Hyperplane& plane);

struct HyperplaneUncondValue {
    double density = 0.0;       // continuous part at the point
    double boundary_mass = 0.0; // singular mass carried on the folded shell
};

HyperplaneUncondValue hyperplane_uncond_density_ml(const Point& x, const FlightParams& params,
                                                   double lambda, const Hyperplane& plane);

// Distance CDF of the flight reflected in the plane x_d = b (b > 0), for
// n >= 1 changes of direction; evaluated by radial-angular quadrature.
double hyperplane_distance_cdf(double r, const FlightParams& params, int n, double b);

// Building blocks of that quadrature, exposed for cross-checks.
// Integral of f(||x||) over the spherical cap B_r intersect {x_d >= b}.
double ball_cap_integral(const std::function<double(double)>& f, int d, double b, double r);

// Integral of f(||nu(y)||) over the mirror lobe (the reflected image of the
// far side of the ball of radius ct) clipped to B_r; plane x_d = b.  Handles
// integrands with an inverse-sqrt blowup as ||nu(y)|| approaches ct.
double mirror_lobe_integral(const std::function<double(double)>& f, int d, double ct, double b,
                            double r);

}  // namespace randflight
