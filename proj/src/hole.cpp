#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ginprod/hole.hpp"
#include "mc_driver.hpp"

namespace ginprod {
namespace {

constexpr double kLog2Pi = 1.8378770664093455;

}  // namespace

LogProb hole_exact_log(const EnsembleParams& params, double r,
                       const MeijerGConfig& cfg) {
  check_params(params);
  if (!(r > 0.0)) throw std::domain_error("hole_exact_log: r must be > 0");
  const double r2 = r * r;
  double acc = 0.0;
  double err = 0.0;
  for (long k = 1; k <= params.N; ++k) {
    const LogProb s = survival_log(int(k), params.n, r2, cfg);
    acc += s.log_value;
    err += s.est_error;
  }
  return LogProb{acc, err};
}

double hole_asympt_log(const EnsembleParams& params, double r) {
  check_params(params);
  if (!(r > 0.0)) throw std::domain_error("hole_asympt_log: r must be > 0");
  const double n = params.n;
  const double N = double(params.N);
  double lgsum = 0.0;
  for (long k = 2; k <= params.N; ++k) lgsum += log_gamma(double(k));
  return 0.5 * (n - 1.0) * N * kLog2Pi - 0.5 * N * std::log(n) - n * lgsum -
         n * N * std::pow(r, 2.0 / n) + N * (N - 1.0 / n) * std::log(r);
}

namespace detail {

TailCut infinite_tail_cut(int n, double r, double tol) {
  if (n < 1) throw std::invalid_argument("infinite_tail_cut: n must be >= 1");
  if (!(r > 0.0)) throw std::domain_error("infinite_tail_cut: r must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("infinite_tail_cut: tol must be > 0");

  const double lr2 = 2.0 * std::log(r);
  auto log_bound = [&](double k) {
    return (k - 0.5) * (n + lr2 - n * std::log(k)) + n / 6.0;
  };

  constexpr long kRankCap = 1000000;
  long rank = long(std::ceil(M_E * std::pow(r, 2.0 / n)));
  if (rank < 1) rank = 1;
  for (;; ++rank) {
    if (rank > kRankCap)
      throw AccuracyError("infinite_tail_cut: rank cap reached", tol);
    if (std::exp(log_bound(double(rank + 1))) >= 0.5) continue;
    double tail = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    bool closed = false;
    for (long j = rank + 1; j <= rank + 200000; ++j) {
      const double b = std::exp(log_bound(double(j)));
      tail += 2.0 * b;
      // The per-rank log bound is concave in the rank, so once consecutive
      // values halve they keep halving; close with a geometric remainder.
      if (b <= 0.5 * prev && b < 1e-18 * std::max(tail, 1e-300)) {
        tail += 4.0 * b;
        closed = true;
        break;
      }
      prev = b;
    }
    if (!closed)
      throw AccuracyError("infinite_tail_cut: tail sum did not close", tol);
    if (tail < tol) return {rank, tail};
  }
}

}  // namespace detail

HoleInfinite hole_infinite_log(int n, double r, double tol) {
  const detail::TailCut cut = detail::infinite_tail_cut(n, r, tol);
  const double r2 = r * r;
  double acc = 0.0;
  double err = 0.0;
  for (long k = 1; k <= cut.rank; ++k) {
    const LogProb s = survival_log(int(k), n, r2);
    acc += s.log_value;
    err += s.est_error;
  }
  HoleInfinite out;
  out.value = LogProb{acc - cut.bound, err + cut.bound};
  out.truncation_rank = cut.rank;
  out.tail_bound = cut.bound;
  return out;
}

HoleBounds hole_bounds_infinite(int n, double r) {
  if (n < 1)
    throw std::invalid_argument("hole_bounds_infinite: n must be >= 1");
  if (!(r > 0.0))
    throw std::domain_error("hole_bounds_infinite: r must be > 0");
  const double R = std::pow(r, 2.0 / n);
  if (!(R >= 1.0))
    throw std::domain_error("hole_bounds_infinite: needs r^(2/n) >= 1");

  double upper = 0.0;
  const long kmax = long(std::floor(R));
  for (long k = 1; k <= kmax; ++k) {
    const double lk = std::log(double(k) / R);
    upper += -n * (R - double(k)) + 0.5 * n * lk - n * double(k) * lk +
             n / (12.0 * R);
  }

  // n-th power of the one-factor infinite hole at the rescaled radius.
  const double root_r = std::pow(r, 1.0 / n);
  const detail::TailCut cut = detail::infinite_tail_cut(1, root_r, 1e-12);
  double acc = 0.0;
  for (long k = 1; k <= cut.rank; ++k) acc += survival_log(int(k), 1, R).log_value;
  const double lower = n * (acc - cut.bound);
  return {lower, upper};
}

McResult hole_mc(const EnsembleParams& params, double r, long samples,
                 std::uint64_t seed, int threads) {
  check_params(params);
  if (!(r > 0.0)) throw std::domain_error("hole_mc: r must be > 0");
  if (samples < 100)
    throw std::invalid_argument("hole_mc: need at least 100 samples");
  const double lr2 = 2.0 * std::log(r);
  const long N = params.N;
  const int n = params.n;
  // Draws consume the same variates for every r, coupling shared-seed runs.
  const long hits = detail::mc_count(
      samples, seed, detail::kStreamHoleMc, threads, [&](RngStream& rng) {
        double min_lg = std::numeric_limits<double>::infinity();
        for (long k = 1; k <= N; ++k) {
          double lg = 0.0;
          for (int j = 0; j < n; ++j) lg += std::log(sample_gamma(int(k), rng));
          min_lg = std::min(min_lg, lg);
        }
        return min_lg > lr2;
      });
  return detail::mc_from_counts(hits, samples);
}

}  // namespace ginprod
