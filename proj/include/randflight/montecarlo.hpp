#pragma once

#include <cstdint>
#include <vector>

#include "randflight/flight.hpp"
#include "randflight/stats.hpp"

namespace randflight {

enum class SurfaceKind { None, Sphere, Plane };

struct SimulationSpec {
    FlightParams params;
    CountLaw count_law = CountLaw::fixed(1);
    SimplexLaw steplaw = SimplexLaw::DirichletH;
    SurfaceKind surface = SurfaceKind::None;
    double R = 1.0;
    Hyperplane plane;
    long samples = 10000;
    std::uint64_t seed = 1;
    int workers = 1;  // threads processing the fixed stream set; <= 0 uses all
    bool keep_positions = false;
};

struct SimulationResult {
    SampleBatch distances;          // atom draws counted, not listed in values
    std::vector<Point> positions;   // reflected terminal points, if kept
    long support_violations = 0;    // plane case: outcomes strictly beyond it
    double mean_free_last = 0.0;    // mean last coordinate before reflection
    double mean_reflected_last = 0.0;
};

// Samples are spread over 64 fixed streams (stream k seeded with seed xor k)
// and merged in stream order, so the result is a function of the seed alone:
// any worker count produces byte-identical output.
SimulationResult run_simulation(const SimulationSpec& spec);

}  // namespace randflight
