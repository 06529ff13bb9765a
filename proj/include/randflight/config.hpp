#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "randflight/montecarlo.hpp"

namespace randflight {

enum class OutputFormat { Csv, Json };

struct GridSpec {
    double r_min = 0.05;
    double r_max = 0.95;
    int points = 50;
};

// Flat description of one run.  Every field has a config-file key; command
// line flags override single keys.  serialize/parse round-trip exactly.
struct ExperimentConfig {
    std::string mode = "density";  // simulate density cdf moments validate epd-check
    FlightParams params;
    SurfaceKind surface = SurfaceKind::None;
    double radius = 1.0;    // reflecting sphere
    double plane_b = 1.0;   // reflecting hyperplane x_d = b, b > 0
    CountLaw count_law = CountLaw::fixed(1);
    SimplexLaw step_law = SimplexLaw::DirichletH;
    long samples = 10000;
    GridSpec grid;
    std::uint64_t seed = 1;
    int workers = 1;
    double ks_limit = 0.01;  // validate mode failure threshold
    std::string out_path;    // empty: stdout
    OutputFormat format = OutputFormat::Csv;
};

// Parse "key value" / "key=value" lines; '#' starts a comment.  Unknown keys
// and malformed values raise std::invalid_argument naming the key.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Apply one "key=value" override on top of an existing config.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Emit every key in fixed order; parse_config_text inverts this exactly.
std::string serialize_config(const ExperimentConfig& cfg);

// Full cross-field validation (surface reachability, mode spelling, grid
// ordering).  Throws std::invalid_argument with the violated rule.
void validate_config(const ExperimentConfig& cfg);

Hyperplane config_plane(const ExperimentConfig& cfg);

}  // namespace randflight
