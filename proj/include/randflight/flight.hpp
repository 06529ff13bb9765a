#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "randflight/geometry.hpp"
#include "randflight/sampling.hpp"

namespace randflight {

// Piecewise-linear path: n+2 vertices starting at the origin, with the
// corresponding instants 0 = t_0 < t_1 < ... < t_n < t.
struct Trajectory {
    std::vector<Point> vertices;
    std::vector<double> times;

    int deviations() const { return static_cast<int>(vertices.size()) - 2; }
    const Point& terminal() const { return vertices.back(); }
};

struct FlightOutcome {
    Point free_position;
    Point reflected_position;
    int n = 0;
    bool reflected_flag = false;
    bool atom_flag = false;
};

Trajectory free_flight(const FlightParams& params, int n, SimplexLaw steplaw, RandomSource& rng);

// Terminal-position reflection in the sphere of radius R.  Only the endpoint
// is mapped; the path itself is reshaped by render_reflected_path.
FlightOutcome reflect_flight_sphere(const Trajectory& traj, double R, const FlightParams& params);

FlightOutcome reflect_flight_hyperplane(const Trajectory& traj, const Hyperplane& h,
                                        const FlightParams& params);

using ReflectingSurface = std::variant<ReflectionSphere, Hyperplane>;

// Pointwise image of the densified path: sub-points beyond the surface are
// mapped through the reflection, so exterior straight segments become circular
// arcs (sphere) or mirrored straight segments (hyperplane).
std::vector<Point> render_reflected_path(const Trajectory& traj, const ReflectingSurface& surface,
                                         int samples_per_segment);

// One vertex per row: index, time, coordinates.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace randflight
