#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "randflight/analytic.hpp"
#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

namespace {

constexpr double kStep = 0.0625;

// Outer quadrature in the dimensionless variable xi = ct * rho: 15-point
// Gauss-Legendre per panel of width pi, with a C-infinity taper from
// 0.4 * xi_max so the conditionally convergent tail is cut smoothly instead
// of truncated hard.
constexpr double kXiMax = 286.0 * M_PI;

// Uniform-grid cubic Hermite table holding a function together with its first
// two derivatives.  value() and deriv() interpolate with cubic Hermite from
// the column pair one order up; deriv2() interpolates linearly, which is
// enough because second-derivative errors are damped by a factor step/4 each
// time they feed the next table.
struct HermiteTable {
    std::vector<double> f;
    std::vector<double> df;
    std::vector<double> ddf;

    void locate(double z, std::size_t* i, double* u) const {
        double q = z / kStep;
        *i = static_cast<std::size_t>(q);
        if (*i + 1 >= f.size()) throw std::out_of_range("interpolation table overrun");
        *u = q - static_cast<double>(*i);
    }

    static double hermite(double a, double sa, double b, double sb, double u) {
        double u2 = u * u;
        double um = 1.0 - u;
        double h00 = (1.0 + 2.0 * u) * um * um;
        double h10 = u * um * um;
        double h01 = u2 * (3.0 - 2.0 * u);
        double h11 = u2 * (u - 1.0);
        return h00 * a + kStep * h10 * sa + h01 * b + kStep * h11 * sb;
    }

    double value(double z) const {
        std::size_t i;
        double u;
        locate(z, &i, &u);
        return hermite(f[i], df[i], f[i + 1], df[i + 1], u);
    }

    double deriv(double z) const {
        std::size_t i;
        double u;
        locate(z, &i, &u);
        return hermite(df[i], ddf[i], df[i + 1], ddf[i + 1], u);
    }

    double deriv2(double z) const {
        std::size_t i;
        double u;
        locate(z, &i, &u);
        return (1.0 - u) * ddf[i] + u * ddf[i + 1];
    }
};

std::size_t table_size() {
    return static_cast<std::size_t>(std::ceil(kXiMax / kStep)) + 2;
}

// Normalized directional kernel b(z) = 2^nu Gamma(nu+1) J_nu(z) / z^nu with
// nu = d/2 - 1; b(0) = 1, b'(z) = -2^nu Gamma(nu+1) J_{nu+1}(z) / z^nu and
// b'' = -b + (2 nu + 1) 2^nu Gamma(nu+1) J_{nu+1}(z) / z^{nu+1}.
HermiteTable build_kernel_table(int d) {
    HermiteTable tab;
    double nu = 0.5 * d - 1.0;
    double front = std::exp(nu * std::log(2.0) + log_gamma(nu + 1.0));
    std::size_t count = table_size();
    tab.f.resize(count);
    tab.df.resize(count);
    tab.ddf.resize(count);
    tab.f[0] = 1.0;
    tab.df[0] = 0.0;
    tab.ddf[0] = -0.5 / (nu + 1.0);
    for (std::size_t i = 1; i < count; ++i) {
        double z = static_cast<double>(i) * kStep;
        double zp = std::pow(z, nu);
        double jn = bessel_j(nu, z);
        double jn1 = bessel_j(nu + 1.0, z);
        tab.f[i] = front * jn / zp;
        tab.df[i] = -front * jn1 / zp;
        tab.ddf[i] = -tab.f[i] + (2.0 * nu + 1.0) * front * jn1 / (zp * z);
    }
    return tab;
}

// The simplex average Phi_n(xi) = E[prod_k b(xi sigma_k)] over the symmetric
// Dirichlet with shape s reduces one component at a time: the first weight is
// Beta(s, n s) distributed and the rest rescale, so
//   Phi_n(xi) = E_V[ b(xi V) Phi_{n-1}(xi (1 - V)) ],  Phi_0 = b.
// Each expectation is a 1D integral; the substitution v = sin^2(u/2) makes the
// Beta weight smooth for every admissible shape (s >= 1/2).  Quadrature panels
// scale with xi because both factors oscillate with combined frequency <= xi.
struct PhiAccum {
    double v0 = 0.0, v1 = 0.0, v2 = 0.0, den = 0.0;
};

PhiAccum phi_point(const HermiteTable& base, const HermiteTable& prev, double s, int level,
                   double xi, bool want_derivs) {
    const GaussRule& gl = gauss_legendre(12);
    int panels = std::max(4, static_cast<int>(std::ceil(xi / 3.0)));
    double width = M_PI / panels;
    double pa = 2.0 * s - 1.0;
    double pb = 2.0 * level * s - 1.0;
    PhiAccum acc;
    for (int p = 0; p < panels; ++p) {
        double a = p * width;
        for (int i = 0; i < 12; ++i) {
            double u = a + 0.5 * width * (gl.nodes[i] + 1.0);
            double sh = std::sin(0.5 * u);
            double ch = std::cos(0.5 * u);
            double v = sh * sh;
            double omv = ch * ch;
            double w = 0.5 * width * gl.weights[i] * std::pow(sh, pa) * std::pow(ch, pb);
            double B = base.value(xi * v);
            double P = prev.value(xi * omv);
            acc.den += w;
            acc.v0 += w * B * P;
            if (want_derivs) {
                double Bp = base.deriv(xi * v);
                double Pp = prev.deriv(xi * omv);
                double Bpp = base.deriv2(xi * v);
                double Ppp = prev.deriv2(xi * omv);
                acc.v1 += w * (v * Bp * P + omv * B * Pp);
                acc.v2 += w * (v * v * Bpp * P + 2.0 * v * omv * Bp * Pp + omv * omv * B * Ppp);
            }
        }
    }
    return acc;
}

HermiteTable build_phi_table(const HermiteTable& base, const HermiteTable& prev, double s,
                             int level) {
    std::size_t count = table_size();
    HermiteTable tab;
    tab.f.resize(count);
    tab.df.resize(count);
    tab.ddf.resize(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < count; ++i) {
        double xi = static_cast<double>(i) * kStep;
        PhiAccum acc = phi_point(base, prev, s, level, xi, true);
        tab.f[i] = acc.v0 / acc.den;
        tab.df[i] = acc.v1 / acc.den;
        tab.ddf[i] = acc.v2 / acc.den;
    }
    return tab;
}

struct OuterRule {
    std::vector<double> xi;
    std::vector<double> w;
};

double taper(double xi) {
    double start = 0.4 * kXiMax;
    if (xi <= start) return 1.0;
    if (xi >= kXiMax) return 0.0;
    double s = (xi - start) / (kXiMax - start);
    double fa = std::exp(-1.0 / s);
    double fb = std::exp(-1.0 / (1.0 - s));
    return fb / (fa + fb);
}

const OuterRule& outer_rule() {
    static OuterRule rule = [] {
        OuterRule r;
        const GaussRule& gl = gauss_legendre(15);
        int panels = static_cast<int>(std::round(kXiMax / M_PI));
        for (int p = 0; p < panels; ++p) {
            double a = p * M_PI;
            for (int i = 0; i < 15; ++i) {
                double xi = a + 0.5 * M_PI * (gl.nodes[i] + 1.0);
                r.xi.push_back(xi);
                r.w.push_back(0.5 * M_PI * gl.weights[i] * taper(xi));
            }
        }
        return r;
    }();
    return rule;
}

double inner_shape(const FlightParams& params, SimplexLaw law) {
    return law == SimplexLaw::DirichletH ? params.dirichlet_shape() : 1.0;
}

// Caches: kernel tables by dimension, intermediate levels by (d, shape key,
// level), and the outer-node vector by (d, h, n, law).  The shape key marks
// the uniform-simplex law with h = 0 since its shape never depends on h.
std::map<int, std::shared_ptr<const HermiteTable>> g_kernel_cache;
std::map<std::tuple<int, int, int>, std::shared_ptr<const HermiteTable>> g_level_cache;
std::map<std::tuple<int, int, int, int>, std::shared_ptr<const std::vector<double>>> g_phi_cache;
std::mutex g_mutex;

std::shared_ptr<const HermiteTable> kernel_table(int d) {
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_kernel_cache.find(d);
        if (it != g_kernel_cache.end()) return it->second;
    }
    auto made = std::make_shared<const HermiteTable>(build_kernel_table(d));
    std::lock_guard<std::mutex> lock(g_mutex);
    return g_kernel_cache.emplace(d, std::move(made)).first->second;
}

std::shared_ptr<const HermiteTable> level_table(int d, int shape_key, double s, int level) {
    if (level == 0) return kernel_table(d);
    auto key = std::make_tuple(d, shape_key, level);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_level_cache.find(key);
        if (it != g_level_cache.end()) return it->second;
    }
    auto base = kernel_table(d);
    auto prev = level_table(d, shape_key, s, level - 1);
    auto made = std::make_shared<const HermiteTable>(build_phi_table(*base, *prev, s, level));
    std::lock_guard<std::mutex> lock(g_mutex);
    return g_level_cache.emplace(key, std::move(made)).first->second;
}

std::shared_ptr<const std::vector<double>> phi_table(const FlightParams& params, int n,
                                                     SimplexLaw law) {
    auto key = std::make_tuple(params.d, params.h, n, static_cast<int>(law));
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_phi_cache.find(key);
        if (it != g_phi_cache.end()) return it->second;
    }
    double s = inner_shape(params, law);
    int shape_key = law == SimplexLaw::DirichletH ? params.h : 0;
    auto base = kernel_table(params.d);
    auto prev = level_table(params.d, shape_key, s, n - 1);
    const OuterRule& rule = outer_rule();
    std::vector<double> phi(rule.xi.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t j = 0; j < rule.xi.size(); ++j) {
        PhiAccum acc = phi_point(*base, *prev, s, n, rule.xi[j], false);
        phi[j] = acc.v0 / acc.den;
    }
    auto stored = std::make_shared<const std::vector<double>>(std::move(phi));
    std::lock_guard<std::mutex> lock(g_mutex);
    return g_phi_cache.emplace(key, std::move(stored)).first->second;
}

}  // namespace

double free_density_bessel(double r, const FlightParams& params, int n, SimplexLaw steplaw) {
    params.validate();
    if (n < 1 || n > 3)
        throw precision_error("oscillatory-integral route supports 1 <= n <= 3 only");
    double ct = params.ct();
    if (r <= 0.0 || r >= ct)
        throw std::invalid_argument("free_density_bessel: r must lie in (0, ct)");
    auto phi = phi_table(params, n, steplaw);
    const OuterRule& rule = outer_rule();
    double nu = 0.5 * params.d - 1.0;
    double scale = r / ct;
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.xi.size(); ++j) {
        double xi = rule.xi[j];
        sum += rule.w[j] * (*phi)[j] * std::pow(xi, 0.5 * params.d) * bessel_j(nu, xi * scale);
    }
    double front = std::pow(2.0 * M_PI, -0.5 * params.d) * std::pow(r, -nu) *
                   std::pow(ct, -(0.5 * params.d + 1.0));
    double value = front * sum;
    if (!std::isfinite(value)) throw precision_error("oscillatory integral did not converge");
    return value;
}

}  // namespace randflight
