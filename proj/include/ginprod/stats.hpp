#pragma once

#include <cstdint>
#include <vector>

#include "ginprod/types.hpp"

namespace ginprod {

struct KSResult {
  double statistic = 0.0;
  double p_value = 1.0;
  long size_a = 0;
  long size_b = 0;
};

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value; ties handled
// by advancing both empirical CDFs past each distinct value.
KSResult gof_ks(std::vector<double> sample_a, std::vector<double> sample_b);

// Survival function of the Kolmogorov distribution.
double kolmogorov_q(double lambda);

// Pooled squared eigenvalue moduli from matrix products vs pooled squared
// radii from the gamma-product pipeline. radii_n overrides the radii-side
// factor count (deliberate mismatch for negative controls); 0 means match.
KSResult validate_theorem1(int n, long N, long draws, std::uint64_t seed,
                           int radii_n = 0);

}  // namespace ginprod
