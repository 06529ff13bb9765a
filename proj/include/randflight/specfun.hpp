#pragma once

#include <stdexcept>
#include <string>

namespace randflight {

// Raised when a series or quadrature cannot reach its accuracy budget.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Truncation control for the series evaluators.
struct SpecTolerance {
    double abs_tol = 1e-12;
    int max_terms = 10000;
};

// log Gamma(x), x > 0. Lanczos approximation, relative error ~ 1e-14.
double log_gamma(double x);

// Gamma(x), x > 0.
double gamma_fn(double x);

// J_order(x) for order >= -1/2, x >= 0. Ascending series for
// x <= max(12, 2*order); beyond that a large-argument scheme that covers
// integer and half-integer orders (the only orders d/2 - 1 produces).
double bessel_j(double order, double x, SpecTolerance tol = {});

// Two-parameter Mittag-Leffler E_{alpha,beta}(x) = sum_k x^k / Gamma(alpha k + beta),
// x >= 0. Series in log-domain terms; usable for x up to ~700/alpha before the
// value itself overflows.
double mittag_leffler(double alpha, double beta, double x, SpecTolerance tol = {});

// Regularized incomplete beta I(z; a, b) = B(z; a, b) / B(a, b), z in [0, 1].
double reg_inc_beta(double z, double a, double b);

// Regularized lower incomplete gamma P(a, x); used for chi-square p-values.
double reg_lower_gamma(double a, double x);

}  // namespace randflight
