#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace randflight {

// Monte Carlo draw bundle.  atom_count tracks the samples whose outcome was
// flagged as landing on the singular support; those are excluded from the
// continuous-part values.
struct SampleBatch {
    std::vector<double> values;
    long atom_count = 0;
    long total = 0;
};

struct GofReport {
    double ks_distance = 0.0;
    double ks_pvalue = 1.0;
    double chi2 = 0.0;
    int dof = 0;
    double atom_mass_hat = 0.0;
    double atom_ci_halfwidth = 0.0;  // normal-approximation binomial interval
};

// Sup distance between the empirical CDF of batch.values and cdf, plus the
// asymptotic Kolmogorov p-value.
std::pair<double, double> ks_statistic(const SampleBatch& batch,
                                       const std::function<double(double)>& cdf);

// Pearson statistic over equal-probability-ish bins; bins with expected count
// below 5 are merged with their neighbor.  Expected masses come from direct
// quadrature of the density over each bin.
std::pair<double, int> chi_square_density(const SampleBatch& batch,
                                          const std::function<double(double)>& density, int bins);

// Upper tail of the chi-square distribution with k degrees of freedom.
double chi_square_tail(double statistic, int dof);

// Integral of the density over [lo, hi] plus the atom mass; edge behavior of
// the integrand is handled by a sqrt substitution at both ends.
double normalization_check(const std::function<double(double)>& density, double lo, double hi,
                           double atom_mass);

GofReport make_report(const SampleBatch& batch, const std::function<double(double)>& cdf,
                      const std::function<double(double)>& density, int bins);

}  // namespace randflight
