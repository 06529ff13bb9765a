#include "randflight/montecarlo.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "randflight/rng.hpp"

namespace randflight {

namespace {

constexpr int kStreams = 64;

struct StreamAccum {
    std::vector<double> values;
    std::vector<Point> positions;
    long atoms = 0;
    long violations = 0;
    double free_last = 0.0;
    double refl_last = 0.0;
};

}  // namespace

SimulationResult run_simulation(const SimulationSpec& spec) {
    spec.params.validate();
    if (spec.samples <= 0) throw std::invalid_argument("samples must be positive");
    if (spec.surface == SurfaceKind::Sphere && spec.R <= 0.0)
        throw std::invalid_argument("reflecting sphere radius must be positive");
    if (spec.surface == SurfaceKind::Plane) {
        if (static_cast<int>(spec.plane.normal.size()) != spec.params.d)
            throw std::invalid_argument("plane normal dimension mismatch");
        if (spec.plane.first_contact_time(spec.params.c) >= spec.params.t)
            throw std::invalid_argument("plane is not reachable within the horizon");
    }

    const int streams = static_cast<int>(std::min<long>(kStreams, spec.samples));
    const long base = spec.samples / streams;
    const long rem = spec.samples % streams;

    // Warm the count-law cache before entering the parallel region.
    {
        RandomSource warm(spec.seed);
        (void)sample_count(spec.params.t, spec.count_law, spec.params, warm);
    }

    std::vector<StreamAccum> acc(streams);

#ifdef _OPENMP
    int threads = spec.workers > 0 ? spec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int s = 0; s < streams; ++s) {
        RandomSource rng(spec.seed ^ static_cast<std::uint64_t>(s));
        StreamAccum& a = acc[s];
        const long quota = base + (s < rem ? 1 : 0);
        a.values.reserve(static_cast<std::size_t>(quota));
        for (long i = 0; i < quota; ++i) {
            const int n = sample_count(spec.params.t, spec.count_law, spec.params, rng);
            Trajectory traj = free_flight(spec.params, n, spec.steplaw, rng);
            FlightOutcome out;
            switch (spec.surface) {
                case SurfaceKind::None:
                    out.free_position = traj.terminal();
                    out.reflected_position = out.free_position;
                    out.n = n;
                    break;
                case SurfaceKind::Sphere:
                    out = reflect_flight_sphere(traj, spec.R, spec.params);
                    break;
                case SurfaceKind::Plane:
                    out = reflect_flight_hyperplane(traj, spec.plane, spec.params);
                    break;
            }
            if (out.atom_flag) {
                ++a.atoms;
            } else {
                a.values.push_back(out.reflected_position.norm());
            }
            if (spec.surface == SurfaceKind::Plane) {
                if (dot(spec.plane.normal, out.reflected_position) > spec.plane.offset)
                    ++a.violations;
            }
            const int d = spec.params.d;
            a.free_last += out.free_position[d - 1];
            a.refl_last += out.reflected_position[d - 1];
            if (spec.keep_positions) a.positions.push_back(out.reflected_position);
        }
    }

    SimulationResult result;
    result.distances.values.reserve(static_cast<std::size_t>(spec.samples));
    double free_sum = 0.0, refl_sum = 0.0;
    for (const StreamAccum& a : acc) {
        result.distances.values.insert(result.distances.values.end(), a.values.begin(),
                                       a.values.end());
        if (spec.keep_positions)
            result.positions.insert(result.positions.end(), a.positions.begin(),
                                    a.positions.end());
        result.distances.atom_count += a.atoms;
        result.support_violations += a.violations;
        free_sum += a.free_last;
        refl_sum += a.refl_last;
    }
    result.distances.total = spec.samples;
    result.mean_free_last = free_sum / static_cast<double>(spec.samples);
    result.mean_reflected_last = refl_sum / static_cast<double>(spec.samples);
    return result;
}

}  // namespace randflight
