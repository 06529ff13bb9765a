#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "randflight/experiment.hpp"
#include "randflight/specfun.hpp"

namespace {

struct Invocation {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_options(CLI::App* sub, Invocation& inv) {
    // The variant switch is spelled --h, so help keeps only its long form.
    sub->set_help_flag("--help", "print this help message and exit");
    sub->add_option("config", inv.config_path, "config file (key = value lines)")
        ->check(CLI::ExistingFile);
    auto forward = [sub, &inv](const std::string& flag, const std::string& key,
                               const std::string& help) {
        sub->add_option_function<std::string>(
               flag,
               [&inv, key](const std::string& v) { inv.overrides.emplace_back(key, v); }, help)
            ->type_name("VALUE");
    };
    forward("--d", "d", "space dimension");
    forward("--c", "c", "speed");
    forward("--t", "t", "time horizon");
    forward("--h", "h", "displacement-law variant (1 or 2)");
    forward("--n", "n", "fixed number of direction changes");
    forward("--lambda", "lambda", "rate of the random count law");
    forward("--count-law", "count-law", "fixed | ml | poisson");
    forward("--surface", "surface", "none | sphere | plane");
    forward("--radius", "radius", "reflecting sphere radius");
    forward("--plane-b", "plane-b", "offset of the reflecting plane x_d = b");
    forward("--step-law", "step-law", "dirichlet | uniform");
    forward("--samples", "samples", "Monte Carlo sample count");
    forward("--grid", "grid", "radius grid min:max:points");
    forward("--seed", "seed", "RNG seed");
    forward("--workers", "workers", "worker threads (0 = all cores)");
    forward("--ks-limit", "ks-limit", "validate mode rejection threshold");
    forward("--out", "out", "output file (default stdout)");
    forward("--format", "format", "csv | json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isotropic random flights: simulation, distance laws, cross-checks"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    Invocation inv;
    const std::pair<const char*, const char*> modes[] = {
        {"simulate", "draw flight samples and write the batch plus a histogram"},
        {"density", "evaluate the distance density on a radius grid"},
        {"cdf", "evaluate the distance CDF on a radius grid"},
        {"moments", "moments of the distance law, orders 0..4"},
        {"validate", "simulate and test against the matching analytic law"},
        {"epd-check", "finite-difference residuals of the field identities"},
    };
    for (const auto& [name, help] : modes) add_common_options(app.add_subcommand(name, help), inv);
    CLI11_PARSE(app, argc, argv);

    try {
        randflight::ExperimentConfig cfg;
        if (!inv.config_path.empty()) cfg = randflight::parse_config_file(inv.config_path);
        cfg.mode = app.get_subcommands().front()->get_name();
        for (const auto& [key, value] : inv.overrides)
            randflight::apply_override(cfg, key, value);
        return randflight::run_experiment(cfg, std::cout);
    } catch (const randflight::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
