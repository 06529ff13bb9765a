#pragma once

#include <limits>
#include <optional>

#include "randflight/geometry.hpp"
#include "randflight/sampling.hpp"

namespace randflight {

// Scalar fields whose second-order PDE identities are checked by finite
// differences.  FBeta: (c^2 t^2 - ||x||^2)^beta.  FBar: the same power of
// (c^2 t^2 - R^4/||x||^2).  FHat: FBeta composed with the hyperplane mirror.
// PDensity: the conditional free density as a function of (x, t).  PBar: its
// inversion image (R/||x||)^{2d} PDensity(R^2 x/||x||^2, t).
enum class EpdFieldKind { FBeta, FBar, FHat, PDensity, PBar };

struct EpdFieldSpec {
    EpdFieldKind kind = EpdFieldKind::FBeta;
    double beta = 1.0;
    FlightParams params;
    int n = 1;         // PDensity / PBar
    double R = 1.0;    // FBar / PBar
    Hyperplane plane;  // FHat
    // Replaces the first-order time coefficient; lets tests demonstrate that
    // a perturbed equation is not solved (residual stops decaying).
    std::optional<double> time_coefficient_override;
};

struct StencilConfig {
    double step_space = 1e-3;
    double step_time = 1e-3;
};

// Returned by convergence_order when the residual is below 1e-13 at both
// steps, i.e. the identity holds to rounding and no order can be estimated.
inline constexpr double kConvergedOrder = std::numeric_limits<double>::infinity();

double field_value(const EpdFieldSpec& spec, const Point& x, double t);

// Central-difference residual (left side minus right side) of the equation
// the field is asserted to solve.
double epd_residual(const EpdFieldSpec& spec, const Point& x, double t, const StencilConfig& cfg);

struct EpdResidualDetail {
    double residual = 0.0;
    double scale = 0.0;  // max of |u_tt| and |c^2 Lap u|, floored at 1e-30
};

EpdResidualDetail epd_residual_detail(const EpdFieldSpec& spec, const Point& x, double t,
                                      const StencilConfig& cfg);

// Richardson order estimate from steps 1e-2 and 5e-3; kConvergedOrder when
// both residuals sit at rounding level.
double convergence_order(const EpdFieldSpec& spec, const Point& x, double t);

}  // namespace randflight
