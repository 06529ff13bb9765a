#pragma once

#include <vector>

namespace randflight {

struct Point {
    std::vector<double> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    double norm2() const;
    double norm() const;
    double& operator[](int i) { return coords[i]; }
    double operator[](int i) const { return coords[i]; }
};

double dot(const Point& a, const Point& b);
double dot(const std::vector<double>& a, const Point& b);

// Sphere centered at the origin.
struct ReflectionSphere {
    double radius;  // > 0
};

// H(a, b) = { x : <a, x> = b }.
struct Hyperplane {
    std::vector<double> normal;  // nonzero
    double offset = 0.0;

    // Earliest time a ball of radius c*t around the origin touches H.
    double first_contact_time(double c) const;
};

// Which part of the reach set a point lies in, relative to the reflecting
// sphere of radius R and the outer sphere of radius ct.  Tags are exclusive;
// Annulus covers R < ||x|| < ct, OnSphere absorbs points within 1e-12
// relative of either radius so that deviation-free paths landing on the outer
// sphere keep their atom bookkeeping stable.
struct SphereRegion {
    enum class Tag { InsideBall, Annulus, OnSphere, Outside };
    Tag tag;
    double inner = 0.0;  // Annulus: lower radius
    double outer = 0.0;  // Annulus: upper radius
    double r = 0.0;      // OnSphere: the matched radius
};

// Membership flags relative to a hyperplane and the ball of radius ct.
//   L: strictly inside the ball, on the near side of H
//   U: strictly inside the ball, on H or beyond it
//   V: mirror image lands strictly inside the ball, and <a,x> <= b
// L and V overlap by construction; both are reported.
struct HalfspaceRegion {
    enum Tag : unsigned {
        L = 1u << 0,
        U = 1u << 1,
        V = 1u << 2,
        BoundaryL = 1u << 3,
        BoundaryU = 1u << 4,
        Outside = 1u << 5,
    };
    unsigned mask = 0;
    bool has(Tag t) const { return (mask & t) != 0; }
};

// x -> R^2 x / ||x||^2.  Involution; fixes the sphere; undefined at the origin.
Point invert_in_sphere(const Point& x, const ReflectionSphere& s);

// x -> x + 2 (b - <a,x>) a / <a,a>.  Involution; fixes H; preserves volume.
Point reflect_in_hyperplane(const Point& x, const Hyperplane& h);

SphereRegion classify_sphere_region(const Point& x, double R, double ct);

HalfspaceRegion classify_halfspace_region(const Point& x, const Hyperplane& h, double ct);

}  // namespace randflight
