#pragma once

#include <cstdint>
#include <optional>

#include "ginprod/types.hpp"

namespace ginprod {

struct OvercrowdReport {
  int n = 1;
  double r = 0.0;
  long m = 1;
  double lower_log = 0.0;
  double upper_log = 0.0;
  std::optional<McResult> mc;
  std::optional<double> normalized_lower;  // -lower_log / ((n/2) m^2 ln m)
  std::optional<double> normalized_upper;
};

// ln P{at least m points inside radius r}, bounded below by the product of
// per-rank inside probabilities for the m lowest ranks.
double overcrowd_lower_log(int n, double r, long m);

// Upper bound: binomial count term plus the high-rank tail, clamped at 0
// (a log-probability bound above 0 carries no information).
double overcrowd_upper_log(int n, double r, long m);

// Empirical frequency of {at least m radii inside r}, ranks truncated at
// the infinite-ensemble cut used by the hole module.
McResult overcrowd_mc(int n, double r, long m, long samples,
                      std::uint64_t seed, int threads = 1);

struct SumKLogK {
  double exact = 0.0;
  double estimate = 0.0;
};

// Compensated direct sum of k*ln(k) against its second-order closed form.
SumKLogK sum_k_log_k(long m);

}  // namespace ginprod
