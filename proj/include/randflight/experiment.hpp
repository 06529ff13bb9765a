#pragma once

#include <iosfwd>
#include <string>

#include "randflight/analytic.hpp"
#include "randflight/config.hpp"

namespace randflight {

// Distance law selected by (surface, count law); law_id is the identifier
// echoed in output metadata.
struct LawBundle {
    RadialLaw law;
    std::string law_id;
};

LawBundle select_radial_law(const ExperimentConfig& cfg);

// Law evaluated on the config grid.
DensityGrid evaluate_grid(const ExperimentConfig& cfg);

// Piecewise-linear read-through cache of an expensive CDF; keeps evaluation
// of quadrature-backed laws affordable inside KS scans.
std::function<double(double)> tabulated_cdf(const std::function<double(double)>& cdf,
                                            double r_max, double top_value, int nodes = 1024);

// Run the configured mode, writing the report to cfg.out_path (or `fallback`
// when no path is set).  Returns the process exit code: 0 on success, 4 when
// validate mode rejects the comparison.  Config problems raise
// std::invalid_argument, accuracy failures raise precision_error; the caller
// maps those to exit codes 2 and 3.
int run_experiment(const ExperimentConfig& cfg, std::ostream& fallback);

}  // namespace randflight
