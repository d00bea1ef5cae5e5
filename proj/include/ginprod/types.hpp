#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ginprod {

// Probability carried in log space so that values far below the double range
// stay usable. value() underflows to 0 honestly.
struct LogProb {
  double log_value = 0.0;
  double est_error = 0.0;  // estimated absolute error of log_value

  double value() const { return std::exp(log_value); }
};

// n is the number of independent Gaussian factors in the matrix product,
// N the matrix dimension. N == kInfiniteN selects the infinite ensemble.
struct EnsembleParams {
  int n = 1;
  long N = 1;

  static constexpr long kInfiniteN = -1;
  bool infinite() const { return N == kInfiniteN; }
};

inline void check_params(const EnsembleParams& p, bool allow_infinite = false) {
  if (p.n < 1) throw std::invalid_argument("EnsembleParams: n must be >= 1");
  if (p.infinite()) {
    if (!allow_infinite)
      throw std::invalid_argument("EnsembleParams: finite N required here");
  } else if (p.N < 1) {
    throw std::invalid_argument("EnsembleParams: N must be >= 1");
  }
}

// A routine could not certify the requested accuracy at its refinement cap.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& msg, double est)
      : std::runtime_error(msg), est_error(est) {}
  double est_error;
};

// A series or iteration hit its term cap before the stopping rule fired.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, long terms)
      : std::runtime_error(msg), terms_used(terms) {}
  long terms_used;
};

// Eigenvalue iteration failed; carries the RNG provenance of the matrix.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& msg, std::uint64_t seed, std::uint64_t stream)
      : std::runtime_error(msg), seed(seed), stream(stream) {}
  std::uint64_t seed;
  std::uint64_t stream;
};

// Monte Carlo frequency estimate with a 99% binomial half-width.
struct McResult {
  double estimate = 0.0;
  double halfwidth = 0.0;
  long samples = 0;
};

// log(1 - e^x) for x < 0 without destructive cancellation at either end.
inline double log1mexp(double x) {
  if (!(x < 0.0)) throw std::domain_error("log1mexp: x must be negative");
  static const double kLn2 = 0.6931471805599453;
  return x < -kLn2 ? std::log1p(-std::exp(x)) : std::log(-std::expm1(x));
}

// log(e^a + e^b), tolerating -inf on either side.
inline double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace ginprod
