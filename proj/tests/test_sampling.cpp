#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "randflight/integrate.hpp"
#include "randflight/sampling.hpp"
#include "randflight/specfun.hpp"

using namespace randflight;

namespace {

double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max(d, std::abs(f - i / n));
        d = std::max(d, std::abs((i + 1) / n - f));
    }
    return d;
}

// Chi-square of binned samples against expected bin masses; merges small bins.
double chi2_against_masses(const std::vector<long>& counts, const std::vector<double>& masses,
                           long total, int* dof_out) {
    double chi2 = 0.0;
    int used = 0;
    double pend_obs = 0.0, pend_exp = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        pend_obs += counts[i];
        pend_exp += masses[i] * total;
        if (pend_exp >= 5.0) {
            chi2 += (pend_obs - pend_exp) * (pend_obs - pend_exp) / pend_exp;
            pend_obs = pend_exp = 0.0;
            ++used;
        }
    }
    if (pend_exp > 0.0 && used > 0) {
        chi2 += (pend_obs - pend_exp) * (pend_obs - pend_exp) / pend_exp;
    }
    *dof_out = std::max(used - 1, 1);
    return chi2;
}

// Truncated series for the count-law normalizer, written directly from its
// definition with the standard library's tgamma; independent of specfun.
double ml_normalizer_oracle(double alpha, double beta, double x) {
    double s = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double term = std::pow(x, k) / std::tgamma(alpha * k + beta);
        s += term;
        if (k > 5 && term < 1e-16 * s) break;
    }
    return s;
}

FlightParams make_params(int d, int h, double c, double t) {
    FlightParams p;
    p.d = d;
    p.h = h;
    p.c = c;
    p.t = t;
    return p;
}

}  // namespace

TEST_CASE("directions are unit norm with centered mean") {
    RandomSource rng(314);
    const int N = 100000;
    std::vector<double> mean(2, 0.0);
    for (int i = 0; i < N; ++i) {
        UnitDirection u = sample_direction(2, rng);
        const double n2 = u.v[0] * u.v[0] + u.v[1] * u.v[1];
        CHECK(std::abs(n2 - 1.0) < 1e-12);
        mean[0] += u.v[0];
        mean[1] += u.v[1];
    }
    CHECK(std::abs(mean[0] / N) < 3.0 / std::sqrt(double(N)));
    CHECK(std::abs(mean[1] / N) < 3.0 / std::sqrt(double(N)));
}

TEST_CASE("d=3 polar angle follows the sin marginal") {
    RandomSource rng(315);
    const int N = 100000;
    std::vector<double> theta;
    theta.reserve(N);
    for (int i = 0; i < N; ++i) {
        UnitDirection u = sample_direction(3, rng);
        DirectionAngles a = direction_to_angles(u);
        REQUIRE(a.theta.size() == 1);
        theta.push_back(a.theta[0]);
    }
    auto cdf = [](double x) { return 0.5 * (1.0 - std::cos(x)); };
    CHECK(ks_distance(theta, cdf) < 0.01);
}

TEST_CASE("direction density pinned values and normalization") {
    DirectionAngles none;
    CHECK(direction_density(none, 2) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));

    DirectionAngles mid;
    mid.theta = {M_PI / 2.0};
    CHECK(direction_density(mid, 3) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));

    // d=3: integrate density * sin-free measure over theta in [0,pi], phi in [0,2pi].
    auto integrand = [](double th) {
        DirectionAngles a;
        a.theta = {th};
        return direction_density(a, 3) * 2.0 * M_PI;
    };
    QuadResult q = integrate_interval(integrand, 0.0, M_PI, EdgeBehavior::Smooth);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("every angular marginal matches its density, d = 2..6") {
    const int N = 100000, bins = 50;
    for (int d = 2; d <= 6; ++d) {
        RandomSource rng(400 + d);
        std::vector<std::vector<double>> angles(static_cast<std::size_t>(std::max(d - 2, 0)));
        std::vector<double> phis;
        phis.reserve(N);
        for (int i = 0; i < N; ++i) {
            DirectionAngles a = direction_to_angles(sample_direction(d, rng));
            for (int j = 0; j < d - 2; ++j) angles[j].push_back(a.theta[j]);
            phis.push_back(a.phi);
        }
        // Colatitude j has marginal density proportional to sin^{d-2-j}.
        for (int j = 0; j < d - 2; ++j) {
            const double power = d - 2 - j;
            auto weight = [power](double th) { return std::pow(std::sin(th), power); };
            const double norm = integrate_interval(weight, 0.0, M_PI).value;
            std::vector<long> counts(bins, 0);
            std::vector<double> masses(bins, 0.0);
            for (double th : angles[j])
                ++counts[std::min(bins - 1, static_cast<int>(th / M_PI * bins))];
            for (int k = 0; k < bins; ++k)
                masses[k] = integrate_interval(weight, k * M_PI / bins, (k + 1) * M_PI / bins)
                                .value /
                            norm;
            int dof = 0;
            const double chi2 = chi2_against_masses(counts, masses, N, &dof);
            const double pvalue = 1.0 - reg_lower_gamma(0.5 * dof, 0.5 * chi2);
            CHECK(pvalue > 0.001);
        }
        // Azimuth is uniform on [0, 2pi).
        std::vector<long> counts(bins, 0);
        std::vector<double> masses(bins, 1.0 / bins);
        for (double ph : phis)
            ++counts[std::min(bins - 1, static_cast<int>(ph / (2.0 * M_PI) * bins))];
        int dof = 0;
        const double chi2 = chi2_against_masses(counts, masses, N, &dof);
        CHECK(1.0 - reg_lower_gamma(0.5 * dof, 0.5 * chi2) > 0.001);
    }
}

TEST_CASE("displacements: no deviation means one full-horizon leg") {
    RandomSource rng(500);
    FlightParams p = make_params(3, 1, 2.0, 1.7);
    DisplacementTimes tau = sample_displacements(0, p, SimplexLaw::DirichletH, rng);
    REQUIRE(tau.tau.size() == 1);
    CHECK(tau.tau[0] == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("displacements sum to the horizon and stay positive") {
    RandomSource rng(501);
    for (auto [d, h] : {std::pair{2, 1}, {3, 1}, {3, 2}, {5, 2}}) {
        FlightParams p = make_params(d, h, 1.0, 2.5);
        for (int n : {1, 2, 5, 11}) {
            for (int rep = 0; rep < 200; ++rep) {
                DisplacementTimes tau = sample_displacements(n, p, SimplexLaw::DirichletH, rng);
                REQUIRE(tau.tau.size() == static_cast<std::size_t>(n + 1));
                double sum = 0.0;
                for (double v : tau.tau) {
                    CHECK(v > 0.0);
                    sum += v;
                }
                CHECK(sum == doctest::Approx(2.5).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("shape-one displacement is uniform on the interval") {
    RandomSource rng(502);
    FlightParams p = make_params(2, 1, 1.0, 1.0);  // shape d/h - 1 = 1
    const int N = 100000;
    std::vector<double> tau1;
    tau1.reserve(N);
    for (int i = 0; i < N; ++i)
        tau1.push_back(sample_displacements(1, p, SimplexLaw::DirichletH, rng).tau[0]);
    CHECK(ks_distance(tau1, [](double x) { return x; }) < 0.01);
}

TEST_CASE("uniform-simplex marginal mean is 1/(n+1)") {
    RandomSource rng(503);
    FlightParams p = make_params(4, 2, 1.0, 1.0);  // shape 1: Dirichlet(1,1,1)
    const int N = 100000;
    double mean = 0.0;
    for (int i = 0; i < N; ++i)
        mean += sample_displacements(2, p, SimplexLaw::DirichletH, rng).tau[0];
    mean /= N;
    CHECK(std::abs(mean - 1.0 / 3.0) < 0.005);

    // The dedicated uniform law gives the same marginal regardless of (d, h).
    FlightParams p2 = make_params(5, 1, 1.0, 1.0);
    double mean2 = 0.0;
    for (int i = 0; i < N; ++i)
        mean2 += sample_displacements(2, p2, SimplexLaw::UniformSimplex, rng).tau[0];
    mean2 /= N;
    CHECK(std::abs(mean2 - 1.0 / 3.0) < 0.005);
}

TEST_CASE("dirichlet marginal follows the beta law") {
    // tau_1 / t is Beta(q, n q) with q = d/h - 1.
    RandomSource rng(504);
    FlightParams p = make_params(3, 1, 1.0, 1.0);  // q = 2
    const int n = 2, N = 100000;
    std::vector<double> tau1;
    tau1.reserve(N);
    for (int i = 0; i < N; ++i)
        tau1.push_back(sample_displacements(n, p, SimplexLaw::DirichletH, rng).tau[0]);
    auto cdf = [](double x) { return reg_inc_beta(x, 2.0, 4.0); };
    CHECK(ks_distance(tau1, cdf) < 0.01);
}

TEST_CASE("displacement coordinates are exchangeable") {
    RandomSource rng(505);
    FlightParams p = make_params(3, 2, 1.0, 1.0);  // half-integer shape 1/2
    const int N = 100000;
    std::vector<double> first, last;
    first.reserve(N);
    last.reserve(N);
    for (int i = 0; i < N; ++i) {
        DisplacementTimes tau = sample_displacements(2, p, SimplexLaw::DirichletH, rng);
        first.push_back(tau.tau[0]);
        last.push_back(tau.tau[2]);
    }
    // Two-sample sup distance between the two marginals.
    std::sort(first.begin(), first.end());
    std::sort(last.begin(), last.end());
    double dist = 0.0;
    std::size_t i = 0, j = 0;
    while (i < first.size() && j < last.size()) {
        if (first[i] <= last[j])
            ++i;
        else
            ++j;
        dist = std::max(dist, std::abs(double(i) - double(j)) / N);
    }
    CHECK(dist < 0.01);
}

TEST_CASE("count pmf pinned values") {
    FlightParams p42 = make_params(4, 2, 1.0, 1.0);
    CountLaw ml = CountLaw::weighted_poisson_ml(1.0);

    // alpha = (d-h)/2 = 1, beta = d/2 = 2, x = lambda t = 1.
    const double norm = ml_normalizer_oracle(1.0, 2.0, 1.0);
    CHECK(norm == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    const double want_p1 = 1.0 / (norm * std::tgamma(3.0));
    CHECK(want_p1 == doctest::Approx(1.0 / (2.0 * (std::exp(1.0) - 1.0))).epsilon(1e-12));
    CHECK(count_pmf(1, 1.0, ml, p42) == doctest::Approx(want_p1).epsilon(1e-10));
    CHECK(count_pmf(1, 1.0, ml, p42) == doctest::Approx(0.2909884).epsilon(1e-5));

    CHECK(count_pmf(0, 1.0, ml, p42) ==
          doctest::Approx(1.0 / (norm * std::tgamma(2.0))).epsilon(1e-10));

    FlightParams p31 = make_params(3, 1, 1.0, 1.0);
    const double norm31 = ml_normalizer_oracle(1.0, 1.5, 1.0);
    CHECK(count_pmf(0, 1.0, CountLaw::weighted_poisson_ml(1.0), p31) ==
          doctest::Approx(1.0 / (norm31 * std::tgamma(1.5))).epsilon(1e-10));

    CountLaw po = CountLaw::homogeneous_poisson(2.0);
    CHECK(count_pmf(0, 1.0, po, p31) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(count_pmf(3, 1.0, po, p31) ==
          doctest::Approx(std::exp(-2.0) * 8.0 / 6.0).epsilon(1e-12));

    CountLaw fx = CountLaw::fixed(3);
    CHECK(count_pmf(3, 1.0, fx, p31) == doctest::Approx(1.0));
    CHECK(count_pmf(2, 1.0, fx, p31) == doctest::Approx(0.0));
}

TEST_CASE("count pmf sums to one across parameter sweep") {
    for (double lt : {0.5, 1.0, 5.0, 20.0}) {
        for (int d = 2; d <= 8; ++d) {
            for (int h : {1, 2}) {
                if (h == 2 && d < 3) continue;
                FlightParams p = make_params(d, h, 1.0, 1.0);
                CountLaw ml = CountLaw::weighted_poisson_ml(lt);
                // With alpha = 1/2 and lambda t = 20 the mass peaks near n = 800.
                double sum = 0.0;
                for (int n = 0; n < 3000; ++n) sum += count_pmf(n, 1.0, ml, p);
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("count sampling matches the pmf") {
    FlightParams p = make_params(3, 1, 1.0, 1.0);
    RandomSource rng(601);

    CountLaw fx = CountLaw::fixed(3);
    for (int i = 0; i < 100; ++i) CHECK(sample_count(1.0, fx, p, rng) == 3);

    CountLaw po = CountLaw::homogeneous_poisson(2.0);
    const int N = 100000;
    double mean = 0.0;
    for (int i = 0; i < N; ++i) mean += sample_count(1.0, po, p, rng);
    mean /= N;
    CHECK(std::abs(mean - 2.0) < 0.02);

    CountLaw ml = CountLaw::weighted_poisson_ml(1.0);
    long zeros = 0;
    for (int i = 0; i < N; ++i) zeros += sample_count(1.0, ml, p, rng) == 0 ? 1 : 0;
    const double p0 = count_pmf(0, 1.0, ml, p);
    const double se = std::sqrt(p0 * (1.0 - p0) / N);
    CHECK(std::abs(double(zeros) / N - p0) < 3.0 * se);
}

TEST_CASE("samplers reproduce exactly under a fixed seed") {
    FlightParams p = make_params(4, 2, 1.0, 1.0);
    RandomSource a(777), b(777);
    for (int i = 0; i < 50; ++i) {
        UnitDirection ua = sample_direction(4, a), ub = sample_direction(4, b);
        for (int k = 0; k < 4; ++k) CHECK(ua.v[k] == ub.v[k]);
        DisplacementTimes ta = sample_displacements(3, p, SimplexLaw::DirichletH, a);
        DisplacementTimes tb = sample_displacements(3, p, SimplexLaw::DirichletH, b);
        for (int k = 0; k < 4; ++k) CHECK(ta.tau[k] == tb.tau[k]);
    }
}

TEST_CASE("flight params validation") {
    CHECK_THROWS_AS(make_params(1, 1, 1.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(2, 2, 1.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 3, 1.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 1, -1.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 1, 1.0, 0.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(make_params(2, 1, 1.0, 1.0).validate());
    CHECK_NOTHROW(make_params(3, 2, 1.0, 1.0).validate());
}
