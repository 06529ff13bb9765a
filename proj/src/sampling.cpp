#include "randflight/sampling.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "randflight/specfun.hpp"

namespace randflight {

void FlightParams::validate() const {
    if (h != 1 && h != 2) throw std::invalid_argument("h must be 1 or 2");
    if (h == 1 && d < 2) throw std::invalid_argument("d must be >= 2 when h = 1");
    if (h == 2 && d < 3) throw std::invalid_argument("d must be >= 3 when h = 2");
    if (c <= 0.0) throw std::invalid_argument("c must be positive");
    if (t <= 0.0) throw std::invalid_argument("t must be positive");
}

CountLaw CountLaw::fixed(int n) {
    if (n < 0) throw std::invalid_argument("fixed count must be >= 0");
    CountLaw law;
    law.tag = Tag::FixedN;
    law.fixed_n = n;
    return law;
}

CountLaw CountLaw::weighted_poisson_ml(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    CountLaw law;
    law.tag = Tag::WeightedPoissonML;
    law.lambda = lambda;
    return law;
}

CountLaw CountLaw::homogeneous_poisson(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    CountLaw law;
    law.tag = Tag::HomogeneousPoisson;
    law.lambda = lambda;
    return law;
}

UnitDirection sample_direction(int d, RandomSource& rng) {
    if (d < 2) throw std::domain_error("sample_direction: d must be >= 2");
    UnitDirection u;
    u.v.resize(d);
    for (;;) {
        double n2 = 0.0;
        for (int i = 0; i < d; ++i) {
            u.v[i] = rng.normal();
            n2 += u.v[i] * u.v[i];
        }
        if (n2 > 0.0) {
            double inv = 1.0 / std::sqrt(n2);
            for (int i = 0; i < d; ++i) u.v[i] *= inv;
            return u;
        }
    }
}

double direction_density(const DirectionAngles& angles, int d) {
    if (d < 2) throw std::domain_error("direction_density: d must be >= 2");
    if (static_cast<int>(angles.theta.size()) != d - 2)
        throw std::invalid_argument("direction_density: expected d-2 colatitudes");
    double value = gamma_fn(0.5 * d) / (2.0 * std::pow(M_PI, 0.5 * d));
    for (int j = 1; j <= d - 2; ++j) {
        value *= std::pow(std::sin(angles.theta[j - 1]), d - 1 - j);
    }
    return value;
}

DirectionAngles direction_to_angles(const UnitDirection& u) {
    int d = static_cast<int>(u.v.size());
    if (d < 2) throw std::invalid_argument("direction_to_angles: need d >= 2");
    DirectionAngles out;
    out.theta.resize(d - 2);
    // Convention: v_d = cos(theta_1), v_{d-1} = sin(theta_1) cos(theta_2), ...,
    // v_2 = (prod sin) cos(phi), v_1 = (prod sin) sin(phi).
    double sines = 1.0;
    for (int j = 1; j <= d - 2; ++j) {
        double cosv = u.v[d - j];
        double ratio = (sines > 0.0) ? cosv / sines : 1.0;
        ratio = std::min(1.0, std::max(-1.0, ratio));
        out.theta[j - 1] = std::acos(ratio);
        sines *= std::sin(out.theta[j - 1]);
    }
    out.phi = std::atan2(u.v[0], u.v[1]);
    if (out.phi < 0.0) out.phi += 2.0 * M_PI;
    return out;
}

DisplacementTimes sample_displacements(int n, const FlightParams& params, SimplexLaw law,
                                       RandomSource& rng) {
    if (n < 0) throw std::invalid_argument("sample_displacements: n must be >= 0");
    params.validate();
    DisplacementTimes out;
    out.tau.resize(n + 1);
    if (n == 0) {
        out.tau[0] = params.t;
        return out;
    }
    double shape = (law == SimplexLaw::DirichletH) ? params.dirichlet_shape() : 1.0;
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
        out.tau[k] = rng.gamma(shape);
        total += out.tau[k];
    }
    double scale = params.t / total;
    for (int k = 0; k <= n; ++k) out.tau[k] *= scale;
    // Keep the sum exact so downstream path endpoints land on the sphere.
    double partial = 0.0;
    for (int k = 0; k < n; ++k) partial += out.tau[k];
    out.tau[n] = params.t - partial;
    if (out.tau[n] <= 0.0) return sample_displacements(n, params, law, rng);
    return out;
}

double count_pmf(int n, double t, const CountLaw& law, const FlightParams& params) {
    if (n < 0) throw std::invalid_argument("count_pmf: n must be >= 0");
    switch (law.tag) {
        case CountLaw::Tag::FixedN:
            return n == law.fixed_n ? 1.0 : 0.0;
        case CountLaw::Tag::HomogeneousPoisson: {
            double lt = law.lambda * t;
            return std::exp(-lt + n * std::log(lt) - log_gamma(n + 1.0));
        }
        case CountLaw::Tag::WeightedPoissonML: {
            params.validate();
            double lt = law.lambda * t;
            double alpha = params.ml_alpha();
            double beta = 0.5 * params.d;
            double norm = mittag_leffler(alpha, beta, lt);
            double log_term = n * std::log(lt) - log_gamma(alpha * n + beta);
            return std::exp(log_term) / norm;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// Cumulative count tables are rebuilt only when (lambda t, d, h, law) changes.
struct CountTableKey {
    int tag;
    double lt;
    int d;
    int h;
    bool operator<(const CountTableKey& o) const {
        return std::tie(tag, lt, d, h) < std::tie(o.tag, o.lt, o.d, o.h);
    }
};

std::map<CountTableKey, std::shared_ptr<const std::vector<double>>> g_count_tables;
std::mutex g_count_tables_mutex;

std::shared_ptr<const std::vector<double>> count_table(double t, const CountLaw& law,
                                                       const FlightParams& params) {
    CountTableKey key{static_cast<int>(law.tag), law.lambda * t, params.d, params.h};
    {
        std::lock_guard<std::mutex> lock(g_count_tables_mutex);
        auto it = g_count_tables.find(key);
        if (it != g_count_tables.end()) return it->second;
    }
    auto table = std::make_shared<std::vector<double>>();
    double cum = 0.0;
    const int max_terms = 100000;
    for (int n = 0; n < max_terms; ++n) {
        cum += count_pmf(n, t, law, params);
        table->push_back(std::min(cum, 1.0));
        if (1.0 - cum < 1e-12) break;
    }
    if (1.0 - cum >= 1e-12)
        throw precision_error("count distribution tail mass did not close within budget");
    std::lock_guard<std::mutex> lock(g_count_tables_mutex);
    auto [it, inserted] = g_count_tables.emplace(key, std::move(table));
    (void)inserted;
    return it->second;
}

}  // namespace

int sample_count(double t, const CountLaw& law, const FlightParams& params, RandomSource& rng) {
    if (t <= 0.0) throw std::invalid_argument("sample_count: t must be positive");
    if (law.tag == CountLaw::Tag::FixedN) return law.fixed_n;
    auto table = count_table(t, law, params);
    double u = rng.uniform();
    for (std::size_t n = 0; n < table->size(); ++n) {
        if (u <= (*table)[n]) return static_cast<int>(n);
    }
    return static_cast<int>(table->size()) - 1;
}

}  // namespace randflight
