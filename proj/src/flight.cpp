#include "randflight/flight.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "randflight/format.hpp"

namespace randflight {

Trajectory free_flight(const FlightParams& params, int n, SimplexLaw steplaw, RandomSource& rng) {
    params.validate();
    if (n < 0) throw std::invalid_argument("free_flight: n must be >= 0");
    DisplacementTimes steps = sample_displacements(n, params, steplaw, rng);
    Trajectory traj;
    traj.vertices.reserve(n + 2);
    traj.times.reserve(n + 2);
    Point pos;
    pos.coords.assign(params.d, 0.0);
    traj.vertices.push_back(pos);
    traj.times.push_back(0.0);
    double elapsed = 0.0;
    for (int k = 0; k <= n; ++k) {
        UnitDirection dir = sample_direction(params.d, rng);
        for (int i = 0; i < params.d; ++i) pos.coords[i] += params.c * steps.tau[k] * dir.v[i];
        elapsed += steps.tau[k];
        traj.vertices.push_back(pos);
        traj.times.push_back(k == n ? params.t : elapsed);
    }
    return traj;
}

FlightOutcome reflect_flight_sphere(const Trajectory& traj, double R, const FlightParams& params) {
    if (R <= 0.0) throw std::invalid_argument("reflect_flight_sphere: R must be positive");
    FlightOutcome out;
    out.free_position = traj.terminal();
    out.reflected_position = out.free_position;
    out.n = traj.deviations();

    // Before the reflecting sphere is reachable nothing changes.
    if (params.t <= R / params.c) return out;

    SphereRegion region = classify_sphere_region(out.free_position, R, params.ct());
    switch (region.tag) {
        case SphereRegion::Tag::InsideBall:
            return out;
        case SphereRegion::Tag::OnSphere:
            if (region.r == R) return out;  // fixed point of the inversion
            // Outer-sphere landing: map through the inversion.  The singular
            // no-deviation case produces the atom at radius R^2/(ct).
            out.reflected_position = invert_in_sphere(out.free_position, ReflectionSphere{R});
            out.reflected_flag = true;
            out.atom_flag = (out.n == 0);
            return out;
        case SphereRegion::Tag::Annulus:
            out.reflected_position = invert_in_sphere(out.free_position, ReflectionSphere{R});
            out.reflected_flag = true;
            return out;
        case SphereRegion::Tag::Outside:
            throw std::invalid_argument("terminal position beyond the reach sphere");
    }
    throw std::logic_error("unreachable");
}

FlightOutcome reflect_flight_hyperplane(const Trajectory& traj, const Hyperplane& h,
                                        const FlightParams& params) {
    FlightOutcome out;
    out.free_position = traj.terminal();
    out.reflected_position = out.free_position;
    out.n = traj.deviations();

    if (params.t < h.first_contact_time(params.c)) return out;
    double ax = dot(h.normal, out.free_position);
    if (ax < h.offset) return out;
    out.reflected_position = reflect_in_hyperplane(out.free_position, h);
    out.reflected_flag = true;
    return out;
}

namespace {

Point map_point(const Point& p, const ReflectingSurface& surface) {
    if (std::holds_alternative<ReflectionSphere>(surface)) {
        const auto& s = std::get<ReflectionSphere>(surface);
        if (p.norm() > s.radius) return invert_in_sphere(p, s);
        return p;
    }
    const auto& h = std::get<Hyperplane>(surface);
    if (dot(h.normal, p) > h.offset) return reflect_in_hyperplane(p, h);
    return p;
}

}  // namespace

std::vector<Point> render_reflected_path(const Trajectory& traj, const ReflectingSurface& surface,
                                         int samples_per_segment) {
    if (samples_per_segment < 2)
        throw std::invalid_argument("render_reflected_path: need at least 2 samples per segment");
    std::vector<Point> out;
    int nseg = static_cast<int>(traj.vertices.size()) - 1;
    for (int s = 0; s < nseg; ++s) {
        const Point& a = traj.vertices[s];
        const Point& b = traj.vertices[s + 1];
        int start = (s == 0) ? 0 : 1;  // shared vertices emitted once
        for (int i = start; i < samples_per_segment; ++i) {
            double w = static_cast<double>(i) / (samples_per_segment - 1);
            Point p;
            p.coords.resize(a.dim());
            for (int j = 0; j < a.dim(); ++j)
                p.coords[j] = (1.0 - w) * a.coords[j] + w * b.coords[j];
            out.push_back(map_point(p, surface));
        }
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "index,time";
    int d = traj.vertices.empty() ? 0 : traj.vertices.front().dim();
    for (int j = 0; j < d; ++j) os << ",x" << j + 1;
    os << "\n";
    for (std::size_t i = 0; i < traj.vertices.size(); ++i) {
        os << i << "," << format_double(traj.times[i]);
        for (int j = 0; j < d; ++j) os << "," << format_double(traj.vertices[i].coords[j]);
        os << "\n";
    }
}

}  // namespace randflight
