#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ginprod/hole.hpp"
#include "ginprod/overcrowd.hpp"
#include "mc_driver.hpp"

namespace ginprod {
namespace {

void check_args(int n, double r, long m, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  if (!(r > 0.0)) throw std::domain_error(std::string(who) + ": r must be > 0");
  if (m < 1) throw std::invalid_argument(std::string(who) + ": m must be >= 1");
}

}  // namespace

double overcrowd_lower_log(int n, double r, long m) {
  check_args(n, r, m, "overcrowd_lower_log");
  const double R = std::pow(r, 2.0 / n);
  double acc = 0.0;
  for (long k = 1; k <= m; ++k)
    acc += double(n) * double(k) *
           std::log(std::min(R / double(k), 1.0) / 2.0);
  return acc;
}

double overcrowd_upper_log(int n, double r, long m) {
  check_args(n, r, m, "overcrowd_upper_log");
  if (m == 1) {
    // Exact complement of the hole probability, cheaper and sharper than
    // the counting bound.
    return log1mexp(hole_infinite_log(n, r, 1e-12).value.log_value);
  }

  const double lr2 = 2.0 * std::log(r);
  auto log_bound = [&](double k) {
    return (k - 0.5) * (n + lr2 - n * std::log(k)) + n / 6.0;
  };

  double count_term = 2.0 * double(m) * std::log(double(m)) + n * double(m) / 6.0;
  for (long k = 1; k <= m; ++k)
    count_term += (double(k) - 0.5) * (n + lr2 - n * std::log(double(k)));

  double tail_log = -std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::infinity();
  long iters = 0;
  for (double k = double(m) * double(m) + 1.0;; k += 1.0) {
    const double b = log_bound(k);
    const bool decreasing = b < prev;
    prev = b;
    if (decreasing && b < -745.0) break;
    if (decreasing && std::isfinite(tail_log) && b < tail_log - 69.1) break;
    if (b >= 0.0) return 0.0;  // a single tail term already exceeds 1
    tail_log = logaddexp(tail_log, b);
    // Slow decay happens only when the disk holds ~m^2 points in
    // expectation, where the vacuous bound 0 is the honest answer.
    if (++iters > 3000000) return 0.0;
  }
  return std::min(logaddexp(count_term, tail_log), 0.0);
}

McResult overcrowd_mc(int n, double r, long m, long samples,
                      std::uint64_t seed, int threads) {
  check_args(n, r, m, "overcrowd_mc");
  if (samples < 100)
    throw std::invalid_argument("overcrowd_mc: need at least 100 samples");
  const long ranks = detail::infinite_tail_cut(n, r, 1e-12).rank;
  const double lr2 = 2.0 * std::log(r);
  // Every draw consumes the same variates regardless of m, so estimates
  // with a shared seed are coupled and exactly monotone in m.
  const long hits = detail::mc_count(
      samples, seed, detail::kStreamOvercrowdMc, threads, [&](RngStream& rng) {
        long inside = 0;
        for (long k = 1; k <= ranks; ++k) {
          double lg = 0.0;
          for (int j = 0; j < n; ++j) lg += std::log(sample_gamma(int(k), rng));
          if (lg < lr2) ++inside;
        }
        return inside >= m;
      });
  return detail::mc_from_counts(hits, samples);
}

SumKLogK sum_k_log_k(long m) {
  if (m < 1) throw std::invalid_argument("sum_k_log_k: m must be >= 1");
  double sum = 0.0;
  double comp = 0.0;
  for (long k = 2; k <= m; ++k) {
    const double y = double(k) * std::log(double(k)) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double lm = std::log(double(m));
  SumKLogK out;
  out.exact = sum;
  out.estimate = 0.5 * double(m) * double(m + 1) * lm -
                 0.25 * double(m) * double(m);
  return out;
}

}  // namespace ginprod
