#pragma once

#include <cstdint>
#include <optional>

#include "ginprod/special.hpp"
#include "ginprod/types.hpp"

namespace ginprod {

struct HoleInfinite {
  LogProb value;
  long truncation_rank = 0;
  double tail_bound = 0.0;  // certified bound on the dropped log mass
};

struct HoleBounds {
  double lower_log = 0.0;
  double upper_log = 0.0;
};

struct HoleReport {
  EnsembleParams params;
  double r = 0.0;
  std::optional<LogProb> exact_log;
  std::optional<double> asympt_log;
  std::optional<double> lower_log;
  std::optional<double> upper_log;
  std::optional<McResult> mc;
  std::optional<long> truncation_rank;
};

// ln P{no eigenvalue modulus <= r}, as a sum of per-rank survival logs.
LogProb hole_exact_log(const EnsembleParams& params, double r,
                       const MeijerGConfig& cfg = {});

// Leading-order large-r expansion of the finite-N hole log-probability.
double hole_asympt_log(const EnsembleParams& params, double r);

// Infinite ensemble: truncated log-product minus its certified tail bound,
// so the true value lies within tail_bound above the reported one.
HoleInfinite hole_infinite_log(int n, double r, double tol);

// Computable sandwich for the infinite hole log-probability; needs
// r^(2/n) >= 1 for the gamma-function sandwich in the upper bound.
HoleBounds hole_bounds_infinite(int n, double r);

// Empirical hole frequency over radii draws, 99% interval half-width.
McResult hole_mc(const EnsembleParams& params, double r, long samples,
                 std::uint64_t seed, int threads = 1);

namespace detail {
// Smallest rank past ceil(e * r^(2/n)) whose per-rank inside-disk bounds
// certify a log-product tail below tol, together with that tail bound.
struct TailCut {
  long rank = 0;
  double bound = 0.0;
};
TailCut infinite_tail_cut(int n, double r, double tol);
}  // namespace detail

}  // namespace ginprod
