// Timing harness: the Monte Carlo batch runner with one worker against the
// OpenMP-parallel configuration, plus a grid-evaluation kernel.  The two
// simulation runs must produce identical batches; the comparison is printed.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "randflight/analytic.hpp"
#include "randflight/montecarlo.hpp"

using namespace randflight;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    long samples = argc > 1 ? std::atol(argv[1]) : 200000;

    SimulationSpec spec;
    spec.params.d = 3;
    spec.params.h = 1;
    spec.params.c = 1.0;
    spec.params.t = 2.0;
    spec.surface = SurfaceKind::Sphere;
    spec.R = 1.0;
    spec.count_law = CountLaw::fixed(3);
    spec.samples = samples;
    spec.seed = 42;

    int hw = 1;
#ifdef _OPENMP
    hw = omp_get_max_threads();
#endif

    spec.workers = 1;
    auto t0 = std::chrono::steady_clock::now();
    SimulationResult serial = run_simulation(spec);
    const double t_serial = seconds_since(t0);

    spec.workers = hw;
    t0 = std::chrono::steady_clock::now();
    SimulationResult parallel = run_simulation(spec);
    const double t_parallel = seconds_since(t0);

    const bool identical = serial.distances.values == parallel.distances.values &&
                           serial.distances.atom_count == parallel.distances.atom_count;

    std::printf("simulation kernel, %ld samples (d=3 h=1 n=3, sphere R=1)\n", samples);
    std::printf("  1 worker : %8.3f s  (%.0f samples/s)\n", t_serial, samples / t_serial);
    std::printf("  %d workers: %8.3f s  (%.0f samples/s, speedup %.2fx)\n", hw, t_parallel,
                samples / t_parallel, t_serial / t_parallel);
    std::printf("  batches identical: %s\n", identical ? "yes" : "NO");

    FlightParams p = spec.params;
    const int grid_n = 400;
    t0 = std::chrono::steady_clock::now();
    double sink = 0.0;
    for (int i = 1; i < grid_n; ++i) {
        const double r = 1.0 * i / grid_n;
        sink += reflected_radial_cdf(r, p, 3, 1.0);
    }
    const double t_grid = seconds_since(t0);
    std::printf("cdf grid kernel, %d points: %.3f s (checksum %.6f)\n", grid_n - 1, t_grid, sink);

    return identical ? 0 : 1;
}
