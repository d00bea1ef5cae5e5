#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ginprod/ensemble.hpp"

namespace ginprod {
namespace {

constexpr double kLogPi = 1.1447298858494002;
constexpr long kKernelTermCap = 1000000;

double log_norm_const(long N, int n) {
  double acc = double(N) * kLogPi;
  for (long k = 2; k <= N; ++k) acc += log_gamma(double(k));
  return -double(n) * acc;
}

}  // namespace

double log_weight_w_n(double r2, int n) {
  if (n < 1) throw std::invalid_argument("log_weight_w_n: n must be >= 1");
  if (!(r2 >= 0.0)) throw std::domain_error("log_weight_w_n: r2 must be >= 0");
  if (r2 == 0.0) {
    // Limit value: w_1(0) = 1; the weight diverges at the origin for n >= 2.
    return n == 1 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return (n - 1) * kLogPi + g_core(r2, n).log_value;
}

double weight_w_n(const ComplexPoint& z, int n) {
  if (!std::isfinite(z.re) || !std::isfinite(z.im))
    throw std::domain_error("weight_w_n: point must be finite");
  return std::exp(log_weight_w_n(z.abs2(), n));
}

std::complex<double> kernel(const ComplexPoint& z, const ComplexPoint& xi,
                            const EnsembleParams& params) {
  check_params(params, true);
  if (!std::isfinite(z.re) || !std::isfinite(z.im) || !std::isfinite(xi.re) ||
      !std::isfinite(xi.im))
    throw std::domain_error("kernel: points must be finite");

  const std::complex<double> w = z.value() * std::conj(xi.value());
  std::complex<double> acc(1.0, 0.0);
  if (w == 0.0) return acc;

  const bool infinite = params.infinite();
  const double peak = std::pow(std::abs(w), 1.0 / params.n);
  std::complex<double> cur(1.0, 0.0);
  double off = 0.0;
  for (long k = 1;; ++k) {
    if (!infinite && k >= params.N) break;
    if (k > kKernelTermCap)
      throw ConvergenceError("kernel: term cap reached", k);
    cur *= w / std::pow(double(k), params.n);
    const double mag = std::abs(cur);
    if (infinite && double(k) > peak && mag < 1e-16 * std::abs(acc)) break;
    acc += cur;
    if (mag > 1e120) {
      const double shift = std::log(mag);
      const double down = std::exp(-shift);
      acc *= down;
      cur *= down;
      off += shift;
    }
  }
  return acc * std::exp(off);
}

double log_joint_density(std::vector<ComplexPoint> points, int n) {
  if (n < 1) throw std::invalid_argument("log_joint_density: n must be >= 1");
  if (points.empty())
    throw std::invalid_argument("log_joint_density: need at least one point");
  for (const auto& p : points)
    if (!std::isfinite(p.re) || !std::isfinite(p.im))
      throw std::domain_error("log_joint_density: points must be finite");

  // Canonical order makes the accumulation identical for any input
  // permutation (the density itself is symmetric).
  std::sort(points.begin(), points.end(),
            [](const ComplexPoint& a, const ComplexPoint& b) {
              return a.re != b.re ? a.re < b.re : a.im < b.im;
            });
  const long N = long(points.size());
  for (long i = 1; i < N; ++i)
    if (points[i].re == points[i - 1].re && points[i].im == points[i - 1].im)
      return -std::numeric_limits<double>::infinity();

  double acc = log_norm_const(N, n);
  for (const auto& p : points) acc += log_weight_w_n(p.abs2(), n);
  for (long i = 0; i < N; ++i)
    for (long j = i + 1; j < N; ++j)
      acc += 2.0 * std::log(std::hypot(points[j].re - points[i].re,
                                       points[j].im - points[i].im));
  return acc;
}

double moduli_joint_density(std::vector<double> radii, int n) {
  if (n < 1)
    throw std::invalid_argument("moduli_joint_density: n must be >= 1");
  const long N = long(radii.size());
  if (N < 1)
    throw std::invalid_argument("moduli_joint_density: need at least one radius");
  if (N > 12)
    throw std::invalid_argument("moduli_joint_density: permanent cap is N = 12");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::domain_error("moduli_joint_density: radii must be positive");

  std::sort(radii.begin(), radii.end());

  // per[r_i^(2j-1)] with per-row scale factors pulled out in log space.
  std::vector<double> mat(N * N);
  double log_scale = 0.0;
  for (long i = 0; i < N; ++i) {
    const double lr = std::log(radii[i]);
    double row_max = -std::numeric_limits<double>::infinity();
    for (long j = 0; j < N; ++j) {
      mat[i * N + j] = (2.0 * j + 1.0) * lr;
      row_max = std::max(row_max, mat[i * N + j]);
    }
    log_scale += row_max;
    for (long j = 0; j < N; ++j) mat[i * N + j] = std::exp(mat[i * N + j] - row_max);
  }
  const double per = detail::permanent_ryser(mat, N);
  if (!(per > 0.0)) return 0.0;

  double lg = std::log(per) + log_scale;
  lg += double(N) * (kLogPi + std::log(2.0)) + log_norm_const(N, n);
  for (double r : radii) lg += log_weight_w_n(r * r, n);
  return std::exp(lg);
}

double radial_density(int k, int n, double x) {
  if (k < 1) throw std::invalid_argument("radial_density: k must be >= 1");
  if (n < 1) throw std::invalid_argument("radial_density: n must be >= 1");
  if (!(x > 0.0)) throw std::domain_error("radial_density: x must be > 0");
  const double lg =
      (k - 1.0) * std::log(x) + g_core(x, n).log_value - n * log_gamma(double(k));
  return std::exp(lg);
}

namespace detail {

double permanent_ryser(const std::vector<double>& a, long n) {
  if (n < 1 || long(a.size()) != n * n)
    throw std::invalid_argument("permanent_ryser: bad dimensions");
  if (n > 20) throw std::invalid_argument("permanent_ryser: size cap is 20");

  std::vector<double> row_sum(n, 0.0);
  double total = 0.0;
  double subset_sign = 1.0;  // (-1)^|S|, starting from the empty subset
  std::uint64_t state = 0;
  const std::uint64_t count = std::uint64_t(1) << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    const std::uint64_t gray = g ^ (g >> 1);
    const std::uint64_t flipped = gray ^ state;
    const int col = [&] {
      int c = 0;
      for (std::uint64_t b = flipped >> 1; b != 0; b >>= 1) ++c;
      return c;
    }();
    const double dir = (gray & flipped) != 0 ? 1.0 : -1.0;
    for (long i = 0; i < n; ++i) row_sum[i] += dir * a[i * n + col];
    state = gray;
    subset_sign = -subset_sign;

    double prod = subset_sign;
    for (long i = 0; i < n; ++i) prod *= row_sum[i];
    total += prod;
  }
  return (n % 2 == 0 ? 1.0 : -1.0) * total;
}

}  // namespace detail

}  // namespace ginprod
