#include "randflight/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace randflight {

double Point::norm2() const {
    double s = 0.0;
    for (double v : coords) s += v * v;
    return s;
}

double Point::norm() const { return std::sqrt(norm2()); }

double dot(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a.coords[i] * b.coords[i];
    return s;
}

double dot(const std::vector<double>& a, const Point& b) {
    if (static_cast<int>(a.size()) != b.dim())
        throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < b.dim(); ++i) s += a[i] * b.coords[i];
    return s;
}

double Hyperplane::first_contact_time(double c) const {
    double n2 = 0.0;
    for (double v : normal) n2 += v * v;
    if (n2 == 0.0) throw std::invalid_argument("hyperplane normal must be nonzero");
    if (c <= 0.0) throw std::invalid_argument("speed must be positive");
    return std::abs(offset) / (c * std::sqrt(n2));
}

namespace {

// General-center inversion; the public surface pins the center at the origin
// because every density formula downstream assumes that.
Point invert_about(const Point& x, const Point& center, double R) {
    Point shifted = x;
    for (int i = 0; i < x.dim(); ++i) shifted.coords[i] -= center.coords[i];
    double n2 = shifted.norm2();
    if (n2 == 0.0) throw std::domain_error("inversion undefined at the sphere center");
    double scale = R * R / n2;
    Point out = shifted;
    for (int i = 0; i < out.dim(); ++i) out.coords[i] = center.coords[i] + scale * shifted.coords[i];
    return out;
}

}  // namespace

Point invert_in_sphere(const Point& x, const ReflectionSphere& s) {
    if (s.radius <= 0.0) throw std::invalid_argument("sphere radius must be positive");
    Point origin;
    origin.coords.assign(x.coords.size(), 0.0);
    return invert_about(x, origin, s.radius);
}

Point reflect_in_hyperplane(const Point& x, const Hyperplane& h) {
    if (h.normal.size() != x.coords.size())
        throw std::invalid_argument("reflect_in_hyperplane: dimension mismatch");
    double n2 = 0.0;
    for (double v : h.normal) n2 += v * v;
    if (n2 == 0.0) throw std::invalid_argument("hyperplane normal must be nonzero");
    double ax = dot(h.normal, x);
    double scale = 2.0 * (h.offset - ax) / n2;
    Point out = x;
    for (int i = 0; i < x.dim(); ++i) out.coords[i] += scale * h.normal[i];
    return out;
}

SphereRegion classify_sphere_region(const Point& x, double R, double ct) {
    if (R <= 0.0 || ct <= 0.0)
        throw std::invalid_argument("classify_sphere_region: radii must be positive");
    double r = x.norm();
    SphereRegion out{};
    if (std::abs(r - ct) <= 1e-12 * ct) {
        out.tag = SphereRegion::Tag::OnSphere;
        out.r = ct;
        return out;
    }
    if (std::abs(r - R) <= 1e-12 * R) {
        out.tag = SphereRegion::Tag::OnSphere;
        out.r = R;
        return out;
    }
    if (r > ct) {
        out.tag = SphereRegion::Tag::Outside;
        return out;
    }
    if (r < R) {
        out.tag = SphereRegion::Tag::InsideBall;
        return out;
    }
    out.tag = SphereRegion::Tag::Annulus;
    out.inner = R;
    out.outer = ct;
    return out;
}

HalfspaceRegion classify_halfspace_region(const Point& x, const Hyperplane& h, double ct) {
    if (ct <= 0.0) throw std::invalid_argument("classify_halfspace_region: ct must be positive");
    double r = x.norm();
    double ax = dot(h.normal, x);
    double b = h.offset;
    Point mirrored = reflect_in_hyperplane(x, h);
    double rm = mirrored.norm();

    HalfspaceRegion out{};
    bool on_boundary = std::abs(r - ct) <= 1e-12 * ct;
    if (on_boundary) {
        out.mask |= (ax < b) ? HalfspaceRegion::BoundaryL : HalfspaceRegion::BoundaryU;
    } else if (r < ct) {
        out.mask |= (ax < b) ? HalfspaceRegion::L : HalfspaceRegion::U;
    } else {
        out.mask |= HalfspaceRegion::Outside;
    }
    if (rm < ct && ax <= b) out.mask |= HalfspaceRegion::V;
    return out;
}

}  // namespace randflight
