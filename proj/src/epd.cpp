#include "randflight/epd.hpp"

#include <cmath>
#include <stdexcept>

#include "randflight/analytic.hpp"

namespace randflight {

namespace {

double norm_of(const Point& x) { return x.norm(); }

void check_domain(const EpdFieldSpec& spec, const Point& x, double t) {
    if (t <= 0.0) throw std::domain_error("field domain needs t > 0");
    double ct = spec.params.c * t;
    double r = norm_of(x);
    switch (spec.kind) {
        case EpdFieldKind::FBeta:
        case EpdFieldKind::PDensity:
            if (r >= ct) throw std::domain_error("point outside the reach ball");
            return;
        case EpdFieldKind::FBar:
        case EpdFieldKind::PBar:
            if (r <= spec.R * spec.R / ct || r >= spec.R)
                throw std::domain_error("point outside the folded annulus");
            return;
        case EpdFieldKind::FHat: {
            Point mirrored = reflect_in_hyperplane(x, spec.plane);
            if (mirrored.norm() >= ct) throw std::domain_error("mirror image outside reach ball");
            return;
        }
    }
}

double raw_value(const EpdFieldSpec& spec, const Point& x, double t) {
    double c = spec.params.c;
    double ct = c * t;
    double r = norm_of(x);
    switch (spec.kind) {
        case EpdFieldKind::FBeta:
            return std::pow(ct * ct - r * r, spec.beta);
        case EpdFieldKind::FBar:
            return std::pow(ct * ct - std::pow(spec.R, 4) / (r * r), spec.beta);
        case EpdFieldKind::FHat: {
            Point mirrored = reflect_in_hyperplane(x, spec.plane);
            double rm = mirrored.norm();
            return std::pow(ct * ct - rm * rm, spec.beta);
        }
        case EpdFieldKind::PDensity: {
            FlightParams p = spec.params;
            p.t = t;
            return free_density_dirichlet(r, p, spec.n);
        }
        case EpdFieldKind::PBar: {
            FlightParams p = spec.params;
            p.t = t;
            double image = spec.R * spec.R / r;
            return std::pow(spec.R / r, 2.0 * p.d) * free_density_dirichlet(image, p, spec.n);
        }
    }
    throw std::logic_error("unreachable");
}

// First-order time coefficient a(x, t) of the equation each field solves,
// written as u_tt - (a/t) u_t = c^2 Lap u.
double time_coefficient(const EpdFieldSpec& spec, const Point& x, double t) {
    if (spec.time_coefficient_override) return *spec.time_coefficient_override;
    int d = spec.params.d;
    switch (spec.kind) {
        case EpdFieldKind::FBeta:
        case EpdFieldKind::FHat:
            return 2.0 * spec.beta - 1.0 + d;
        case EpdFieldKind::PDensity:
            // Sign flips: the density satisfies u_tt + (A/t) u_t = c^2 Lap u.
            return -((spec.n + 1.0) * (d - spec.params.h) + spec.params.h - 1.0);
        case EpdFieldKind::FBar: {
            double r = norm_of(x);
            double ct = spec.params.c * t;
            double R4 = std::pow(spec.R, 4);
            double r2 = r * r;
            return 2.0 * spec.beta - 1.0 +
                   (R4 / r2) * ((4.0 - d) / r2 +
                                2.0 * (spec.beta - 1.0) * (1.0 - R4 / (r2 * r2)) /
                                    (ct * ct - R4 / r2));
        }
        case EpdFieldKind::PBar:
            throw std::logic_error("PBar uses its own residual form");
    }
    throw std::logic_error("unreachable");
}

double effective_beta(const EpdFieldSpec& spec) {
    if (spec.kind == EpdFieldKind::PDensity || spec.kind == EpdFieldKind::PBar)
        return 0.5 * spec.n * (spec.params.d - spec.params.h) - 1.0;
    return spec.beta;
}

struct StencilEval {
    double u = 0.0;
    double ut = 0.0;
    double utt = 0.0;
    double lap = 0.0;
    double x_grad = 0.0;  // <x, grad u>
};

StencilEval evaluate_stencil(const EpdFieldSpec& spec, const Point& x, double t,
                             const StencilConfig& cfg) {
    if (cfg.step_space <= 0.0 || cfg.step_time <= 0.0)
        throw std::invalid_argument("stencil steps must be positive");
    double hs = cfg.step_space;
    double ht = cfg.step_time;
    check_domain(spec, x, t);

    StencilEval ev;
    ev.u = raw_value(spec, x, t);
    check_domain(spec, x, t + ht);
    check_domain(spec, x, t - ht);
    double up = raw_value(spec, x, t + ht);
    double um = raw_value(spec, x, t - ht);
    ev.ut = (up - um) / (2.0 * ht);
    ev.utt = (up - 2.0 * ev.u + um) / (ht * ht);

    int d = x.dim();
    for (int i = 0; i < d; ++i) {
        Point xp = x;
        Point xm = x;
        xp.coords[i] += hs;
        xm.coords[i] -= hs;
        check_domain(spec, xp, t);
        check_domain(spec, xm, t);
        double vp = raw_value(spec, xp, t);
        double vm = raw_value(spec, xm, t);
        ev.lap += (vp - 2.0 * ev.u + vm) / (hs * hs);
        ev.x_grad += x.coords[i] * (vp - vm) / (2.0 * hs);
    }
    return ev;
}

}  // namespace

double field_value(const EpdFieldSpec& spec, const Point& x, double t) {
    spec.params.validate();
    check_domain(spec, x, t);
    return raw_value(spec, x, t);
}

EpdResidualDetail epd_residual_detail(const EpdFieldSpec& spec, const Point& x, double t,
                                      const StencilConfig& cfg) {
    spec.params.validate();
    StencilEval ev = evaluate_stencil(spec, x, t, cfg);
    double c2 = spec.params.c * spec.params.c;
    EpdResidualDetail out;
    if (spec.kind == EpdFieldKind::PBar) {
        // The folded density solves a lower-order-perturbed equation whose
        // space side carries an extra potential and a radial drift term.
        double beta = effective_beta(spec);
        double m = 2.0 * beta + spec.params.d;
        EpdFieldSpec bar = spec;
        bar.kind = EpdFieldKind::FBar;
        bar.beta = beta;
        double a = spec.time_coefficient_override ? *spec.time_coefficient_override
                                                  : time_coefficient(bar, x, t);
        double bcoef = 2.0 * m - a;
        double ccoef = m * (m - 1.0 - a);
        double r2 = x.norm2();
        int d = spec.params.d;
        double lhs = ev.utt + (bcoef / t) * ev.ut + (ccoef / (t * t)) * ev.u;
        double rhs = c2 * (ev.lap + 2.0 * d * (3.0 * d - 2.0) / r2 * ev.u +
                           (4.0 * d / r2) * ev.x_grad);
        out.residual = lhs - rhs;
        out.scale = std::max({std::abs(ev.utt), std::abs(rhs), 1e-30});
        return out;
    }
    double a = time_coefficient(spec, x, t);
    double lhs = ev.utt - (a / t) * ev.ut;
    double rhs = c2 * ev.lap;
    out.residual = lhs - rhs;
    out.scale = std::max({std::abs(ev.utt), std::abs(rhs), 1e-30});
    return out;
}

double epd_residual(const EpdFieldSpec& spec, const Point& x, double t, const StencilConfig& cfg) {
    return epd_residual_detail(spec, x, t, cfg).residual;
}

double convergence_order(const EpdFieldSpec& spec, const Point& x, double t) {
    StencilConfig coarse{1e-2, 1e-2};
    StencilConfig fine{5e-3, 5e-3};
    double r1 = std::abs(epd_residual(spec, x, t, coarse));
    double r2 = std::abs(epd_residual(spec, x, t, fine));
    if (r1 < 1e-13 && r2 < 1e-13) return kConvergedOrder;
    if (r2 == 0.0) return kConvergedOrder;
    return std::log2(r1 / r2);
}

}  // namespace randflight
