#pragma once

#include <functional>
#include <vector>

namespace randflight {

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    long evals = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 with interval bisection.
QuadResult adaptive_gk(const std::function<double(double)>& f, double a, double b,
                       double abs_tol = 1e-10, double rel_tol = 1e-10, int max_depth = 30);

// How an integrand approaches the edges of its interval.  Sqrt hints apply the
// substitution u^2 = distance-to-edge, which removes (edge distance)^(-1/2)
// singularities such as the ones at r = ct and r = R^2/(ct).
enum class EdgeBehavior { Smooth, SqrtLower, SqrtUpper, SqrtBoth };

QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              EdgeBehavior edge = EdgeBehavior::Smooth,
                              double abs_tol = 1e-10, double rel_tol = 1e-10);

}  // namespace randflight
