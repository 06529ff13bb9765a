#pragma once

#include <vector>

#include "randflight/rng.hpp"

namespace randflight {

// Core parameter block: dimension d, speed c, horizon t, and the variant
// switch h that selects which Dirichlet family drives the displacement times.
// h = 1 needs d >= 2; h = 2 needs d >= 3.
struct FlightParams {
    int d = 2;
    double c = 1.0;
    double t = 1.0;
    int h = 1;

    void validate() const;
    double ct() const { return c * t; }
    // Common exponents derived from (d, h).
    double dirichlet_shape() const { return static_cast<double>(d) / h - 1.0; }
    double ml_alpha() const { return 0.5 * (d - h); }
};

// Angular coordinates of a direction: d-2 colatitudes in [0, pi] and one
// azimuth in [0, 2*pi).
struct DirectionAngles {
    std::vector<double> theta;
    double phi = 0.0;
};

struct UnitDirection {
    std::vector<double> v;
};

// Durations between changes of direction; n + 1 entries, positive, summing to
// the horizon t (the last entry is the remainder).
struct DisplacementTimes {
    std::vector<double> tau;
};

struct CountLaw {
    enum class Tag { FixedN, WeightedPoissonML, HomogeneousPoisson };
    Tag tag = Tag::FixedN;
    int fixed_n = 0;
    double lambda = 0.0;

    static CountLaw fixed(int n);
    static CountLaw weighted_poisson_ml(double lambda);
    static CountLaw homogeneous_poisson(double lambda);
};

enum class SimplexLaw { DirichletH, UniformSimplex };

UnitDirection sample_direction(int d, RandomSource& rng);

// Joint density of the angular coordinates:
//   Gamma(d/2) / (2 pi^{d/2}) * prod_j sin^{d-1-j}(theta_j).
double direction_density(const DirectionAngles& angles, int d);

// Inverse of the angular parametrization; theta_j recovered from the trailing
// coordinates, phi from the leading pair.
DirectionAngles direction_to_angles(const UnitDirection& u);

DisplacementTimes sample_displacements(int n, const FlightParams& params, SimplexLaw law,
                                       RandomSource& rng);

double count_pmf(int n, double t, const CountLaw& law, const FlightParams& params);

int sample_count(double t, const CountLaw& law, const FlightParams& params, RandomSource& rng);

}  // namespace randflight
