#include "randflight/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randflight/integrate.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

namespace {

// Asymptotic Kolmogorov tail Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_pvalue(double distance, std::size_t n) {
    double x = distance * (std::sqrt(static_cast<double>(n)) + 0.12 +
                           0.11 / std::sqrt(static_cast<double>(n)));
    if (x < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace

std::pair<double, double> ks_statistic(const SampleBatch& batch,
                                       const std::function<double(double)>& cdf) {
    if (batch.values.empty()) throw std::domain_error("ks_statistic: empty batch");
    std::vector<double> sorted = batch.values;
    std::sort(sorted.begin(), sorted.end());
    std::size_t n = sorted.size();
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = cdf(sorted[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        dist = std::max({dist, std::abs(f - lo), std::abs(f - hi)});
    }
    return {dist, kolmogorov_pvalue(dist, n)};
}

std::pair<double, int> chi_square_density(const SampleBatch& batch,
                                          const std::function<double(double)>& density,
                                          int bins) {
    if (batch.values.empty()) throw std::domain_error("chi_square_density: empty batch");
    if (bins < 2) throw std::invalid_argument("chi_square_density: need at least 2 bins");
    std::vector<double> sorted = batch.values;
    std::sort(sorted.begin(), sorted.end());
    double lo = sorted.front();
    double hi = sorted.back();
    if (!(hi > lo)) throw std::domain_error("chi_square_density: degenerate sample range");
    // Extend the range a hair so the extreme order statistics fall inside.
    double pad = 1e-9 * (hi - lo);
    lo -= pad;
    hi += pad;

    auto n = static_cast<double>(sorted.size());
    std::vector<double> edges(bins + 1);
    for (int b = 0; b <= bins; ++b) edges[b] = lo + (hi - lo) * b / bins;

    std::vector<double> expected(bins);
    std::vector<double> observed(bins, 0.0);
    double total_mass = 0.0;
    for (int b = 0; b < bins; ++b) {
        expected[b] =
            integrate_interval(density, edges[b], edges[b + 1], EdgeBehavior::Smooth, 1e-9, 1e-7)
                .value;
        total_mass += expected[b];
    }
    // Condition on the observed range: compare bin shares, not raw masses.
    if (total_mass <= 0.0) throw std::domain_error("chi_square_density: zero expected mass");
    for (int b = 0; b < bins; ++b) expected[b] *= n / total_mass;

    std::size_t idx = 0;
    for (int b = 0; b < bins; ++b) {
        while (idx < sorted.size() && sorted[idx] <= edges[b + 1]) {
            observed[b] += 1.0;
            ++idx;
        }
    }

    // Merge neighbors until every expected count reaches 5.
    std::vector<double> e_merged, o_merged;
    double e_acc = 0.0, o_acc = 0.0;
    for (int b = 0; b < bins; ++b) {
        e_acc += expected[b];
        o_acc += observed[b];
        if (e_acc >= 5.0) {
            e_merged.push_back(e_acc);
            o_merged.push_back(o_acc);
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    if (e_acc > 0.0) {
        if (e_merged.empty()) throw std::domain_error("chi_square_density: too few samples");
        e_merged.back() += e_acc;
        o_merged.back() += o_acc;
    }
    if (e_merged.size() < 2) throw std::domain_error("chi_square_density: too few usable bins");

    double chi2 = 0.0;
    for (std::size_t b = 0; b < e_merged.size(); ++b) {
        double diff = o_merged[b] - e_merged[b];
        chi2 += diff * diff / e_merged[b];
    }
    return {chi2, static_cast<int>(e_merged.size()) - 1};
}

double chi_square_tail(double statistic, int dof) {
    if (dof < 1) throw std::invalid_argument("chi_square_tail: dof must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return 1.0 - reg_lower_gamma(0.5 * dof, 0.5 * statistic);
}

double normalization_check(const std::function<double(double)>& density, double lo, double hi,
                           double atom_mass) {
    QuadResult q = integrate_interval(density, lo, hi, EdgeBehavior::SqrtBoth, 1e-9, 1e-8);
    return q.value + atom_mass;
}

GofReport make_report(const SampleBatch& batch, const std::function<double(double)>& cdf,
                      const std::function<double(double)>& density, int bins) {
    GofReport rep;
    auto [d, p] = ks_statistic(batch, cdf);
    rep.ks_distance = d;
    rep.ks_pvalue = p;
    auto [chi2, dof] = chi_square_density(batch, density, bins);
    rep.chi2 = chi2;
    rep.dof = dof;
    if (batch.total > 0) {
        double phat = static_cast<double>(batch.atom_count) / static_cast<double>(batch.total);
        rep.atom_mass_hat = phat;
        rep.atom_ci_halfwidth =
            1.96 * std::sqrt(std::max(phat * (1.0 - phat), 1e-12) /
                             static_cast<double>(batch.total));
    }
    return rep;
}

}  // namespace randflight
