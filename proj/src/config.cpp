#include "randflight/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "randflight/format.hpp"

namespace randflight {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) bad(key, "not a number: '" + v + "'");
    return x;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
    Int x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) bad(key, "not an integer: '" + v + "'");
    return x;
}

GridSpec parse_grid(const std::string& key, const std::string& v) {
    std::size_t a = v.find(':');
    std::size_t b = v.rfind(':');
    if (a == std::string::npos || b == a) bad(key, "expected min:max:points, got '" + v + "'");
    GridSpec g;
    g.r_min = parse_double(key, v.substr(0, a));
    g.r_max = parse_double(key, v.substr(a + 1, b - a - 1));
    g.points = parse_int<int>(key, v.substr(b + 1));
    return g;
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "mode") {
        cfg.mode = value;
    } else if (key == "d") {
        cfg.params.d = parse_int<int>(key, value);
    } else if (key == "c") {
        cfg.params.c = parse_double(key, value);
    } else if (key == "t") {
        cfg.params.t = parse_double(key, value);
    } else if (key == "h") {
        cfg.params.h = parse_int<int>(key, value);
    } else if (key == "surface") {
        if (value == "none") cfg.surface = SurfaceKind::None;
        else if (value == "sphere") cfg.surface = SurfaceKind::Sphere;
        else if (value == "plane") cfg.surface = SurfaceKind::Plane;
        else bad(key, "expected none|sphere|plane, got '" + value + "'");
    } else if (key == "radius") {
        cfg.radius = parse_double(key, value);
    } else if (key == "plane-b") {
        cfg.plane_b = parse_double(key, value);
    } else if (key == "count-law") {
        if (value == "fixed") cfg.count_law.tag = CountLaw::Tag::FixedN;
        else if (value == "ml") cfg.count_law.tag = CountLaw::Tag::WeightedPoissonML;
        else if (value == "poisson") cfg.count_law.tag = CountLaw::Tag::HomogeneousPoisson;
        else bad(key, "expected fixed|ml|poisson, got '" + value + "'");
    } else if (key == "n") {
        cfg.count_law.fixed_n = parse_int<int>(key, value);
    } else if (key == "lambda") {
        cfg.count_law.lambda = parse_double(key, value);
    } else if (key == "step-law") {
        if (value == "dirichlet") cfg.step_law = SimplexLaw::DirichletH;
        else if (value == "uniform") cfg.step_law = SimplexLaw::UniformSimplex;
        else bad(key, "expected dirichlet|uniform, got '" + value + "'");
    } else if (key == "samples") {
        cfg.samples = parse_int<long>(key, value);
    } else if (key == "grid") {
        cfg.grid = parse_grid(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "workers") {
        cfg.workers = parse_int<int>(key, value);
    } else if (key == "ks-limit") {
        cfg.ks_limit = parse_double(key, value);
    } else if (key == "out") {
        cfg.out_path = value;
    } else if (key == "format") {
        if (value == "csv") cfg.format = OutputFormat::Csv;
        else if (value == "json") cfg.format = OutputFormat::Json;
        else bad(key, "expected csv|json, got '" + value + "'");
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t sep = line.find('=');
        if (sep == std::string::npos) sep = line.find_first_of(" \t");
        if (sep == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, sep));
        std::string value = trim(line.substr(sep + 1));
        apply_override(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "mode = " << cfg.mode << "\n";
    out << "d = " << cfg.params.d << "\n";
    out << "c = " << format_double(cfg.params.c) << "\n";
    out << "t = " << format_double(cfg.params.t) << "\n";
    out << "h = " << cfg.params.h << "\n";
    out << "surface = "
        << (cfg.surface == SurfaceKind::None
                ? "none"
                : cfg.surface == SurfaceKind::Sphere ? "sphere" : "plane")
        << "\n";
    out << "radius = " << format_double(cfg.radius) << "\n";
    out << "plane-b = " << format_double(cfg.plane_b) << "\n";
    out << "count-law = "
        << (cfg.count_law.tag == CountLaw::Tag::FixedN
                ? "fixed"
                : cfg.count_law.tag == CountLaw::Tag::WeightedPoissonML ? "ml" : "poisson")
        << "\n";
    out << "n = " << cfg.count_law.fixed_n << "\n";
    out << "lambda = " << format_double(cfg.count_law.lambda) << "\n";
    out << "step-law = " << (cfg.step_law == SimplexLaw::DirichletH ? "dirichlet" : "uniform")
        << "\n";
    out << "samples = " << cfg.samples << "\n";
    out << "grid = " << format_double(cfg.grid.r_min) << ":" << format_double(cfg.grid.r_max)
        << ":" << cfg.grid.points << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "ks-limit = " << format_double(cfg.ks_limit) << "\n";
    if (!cfg.out_path.empty()) out << "out = " << cfg.out_path << "\n";
    out << "format = " << (cfg.format == OutputFormat::Csv ? "csv" : "json") << "\n";
    return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.mode != "simulate" && cfg.mode != "density" && cfg.mode != "cdf" &&
        cfg.mode != "moments" && cfg.mode != "validate" && cfg.mode != "epd-check")
        throw std::invalid_argument("unknown mode '" + cfg.mode + "'");
    if (cfg.mode == "epd-check") return;  // self-contained battery
    cfg.params.validate();
    if (cfg.surface == SurfaceKind::Sphere) {
        if (cfg.radius <= 0.0) throw std::invalid_argument("radius must be positive");
        if (cfg.radius >= cfg.params.ct())
            throw std::invalid_argument("reflecting sphere must lie inside the reachable ball");
    }
    if (cfg.surface == SurfaceKind::Plane) {
        if (cfg.plane_b <= 0.0) throw std::invalid_argument("plane-b must be positive");
        if (cfg.plane_b >= cfg.params.ct())
            throw std::invalid_argument("plane-b must be below the horizon radius");
    }
    switch (cfg.count_law.tag) {
        case CountLaw::Tag::FixedN:
            if (cfg.count_law.fixed_n < 0)
                throw std::invalid_argument("n must be nonnegative");
            break;
        case CountLaw::Tag::WeightedPoissonML:
        case CountLaw::Tag::HomogeneousPoisson:
            if (cfg.count_law.lambda <= 0.0)
                throw std::invalid_argument("lambda must be positive");
            break;
    }
    if (cfg.samples <= 0) throw std::invalid_argument("samples must be positive");
    if (cfg.grid.points < 2) throw std::invalid_argument("grid needs at least two points");
    if (!(cfg.grid.r_min > 0.0) || !(cfg.grid.r_max > cfg.grid.r_min))
        throw std::invalid_argument("grid must satisfy 0 < min < max");
    if (cfg.workers < 0) throw std::invalid_argument("workers must be nonnegative");
    if (cfg.ks_limit <= 0.0) throw std::invalid_argument("ks-limit must be positive");
}

Hyperplane config_plane(const ExperimentConfig& cfg) {
    Hyperplane h;
    h.normal.assign(static_cast<std::size_t>(cfg.params.d), 0.0);
    h.normal.back() = 1.0;
    h.offset = cfg.plane_b;
    return h;
}

}  // namespace randflight
