#include <algorithm>
#include <cmath>
#include <complex>

#include "ginprod/special.hpp"

// Contour route. The inversion integral is evaluated on a vertical line
// through (or right of) the saddle point of the integrand, where the
// integrand's modulus is comparable to the final value and the trapezoid rule
// converges geometrically. Error control is step-halving (Richardson) plus an
// explicit bound on the truncated tail, which decays at least like
// exp(-n pi |y| / 2).

namespace ginprod {
namespace {

constexpr double kQuadTol = 1e-12;
constexpr double kQuadAbort = 1e-10;
constexpr double kMagCut = 1e-19;
constexpr long kMaxPoints = 4000000;

struct ContourResult {
  double log_t = 0.0;  // log of the trapezoid value of integral exp(E(y)-E0) dy
  double est_error = 0.0;
};

// Sums 2*Re exp(E(y)-e0) over y = start, start+stride, ... sweeping at least
// to y_min and then until the modulus falls under the cut, which is sound
// because |Gamma(x+iy)| decreases monotonically in |y|. Returns the partial
// sum and the last modulus seen.
template <typename EFn>
void scan_line(const EFn& efn, double e0, double start, double stride,
               double y_min, long& evals, double& sum, double& last_mag) {
  sum = 0.0;
  last_mag = 0.0;
  for (double y = start;; y += stride) {
    const std::complex<double> w = efn(y) - e0;
    const double mag = std::exp(w.real());
    sum += 2.0 * mag * std::cos(w.imag());
    ++evals;
    last_mag = mag;
    if (mag < kMagCut && y >= y_min) break;
    if (evals > kMaxPoints)
      throw AccuracyError("contour integral: evaluation cap reached", 1.0);
  }
}

template <typename EFn>
ContourResult trap_contour(const EFn& efn, double e0, double h0,
                           double decay_rate, double y_min) {
  long evals = 0;
  double h = h0;
  double sum, mag_stop;
  scan_line(efn, e0, h, h, y_min, evals, sum, mag_stop);
  double s_grid = 1.0 + sum;          // 1 = f(0) after normalization
  double t_prev = h * s_grid;
  double tail_abs = 2.0 * mag_stop / decay_rate;

  double est_rel = 1.0;
  double t_cur = t_prev;
  for (int halving = 0; halving < 14; ++halving) {
    h *= 0.5;
    double odd_sum, odd_mag;
    scan_line(efn, e0, h, 2.0 * h, y_min, evals, odd_sum, odd_mag);
    s_grid += odd_sum;
    tail_abs = 2.0 * std::max(mag_stop, odd_mag) / decay_rate;
    t_cur = h * s_grid;
    est_rel = std::abs(t_cur - t_prev) / (3.0 * std::max(std::abs(t_cur), 1e-300));
    t_prev = t_cur;
    if (est_rel <= kQuadTol) break;
  }

  if (!(t_cur > 0.0))
    throw AccuracyError("contour integral: nonpositive trapezoid sum", 1.0);
  const double tail_rel = tail_abs / t_cur;
  const double est = est_rel + tail_rel + 5e-15;
  if (est > kQuadAbort)
    throw AccuracyError("contour integral: accuracy target not reached", est);
  return ContourResult{std::log(t_cur), est};
}

constexpr double kLog2Pi = 1.8378770664093455;

double solve_survival_offset(int k, int n, double big_l) {
  // Root of n psi(k+c) - big_l - 1/c, increasing in c.
  auto f = [&](double c) {
    return n * digamma(k + c) - big_l - 1.0 / c;
  };
  double hi = std::max(2.0, std::exp(big_l / n) + 2.0 - k);
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e12)
      throw AccuracyError("survival contour: saddle bracket failed", 1.0);
  }
  double lo = 1e-12;
  double c = std::min(std::max(std::exp(big_l / n) + 0.5 - k, 0.5 * hi), hi);
  if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fc = f(c);
    if (fc > 0.0)
      hi = c;
    else
      lo = c;
    const double dfc = n * detail::trigamma(k + c) + 1.0 / (c * c);
    double next = c - fc / dfc;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - c) <= 1e-13 * (1.0 + c)) {
      c = next;
      break;
    }
    c = next;
  }
  return c;
}

}  // namespace

GEvalResult g_core_mb(double t, int n, const MeijerGConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("g_core_mb: t must be > 0");
  if (n < 1) throw std::invalid_argument("g_core_mb: n must be >= 1");
  detail::check_config(cfg);

  const double logt = std::log(t);
  const double c = detail::psi_inverse(logt / n);
  const double sigma = 1.0 / std::sqrt(n * detail::trigamma(c));
  const double h0 = std::min({cfg.quad_step, 0.4 * sigma, 0.15 * c});
  const double e0 = -c * logt + n * log_gamma(c);

  auto efn = [&](double y) {
    const std::complex<double> s(c, y);
    return -s * logt + double(n) * log_gamma(s);
  };
  const ContourResult r =
      trap_contour(efn, e0, h0, 0.5 * M_PI * n, cfg.quad_halfwidth);

  GEvalResult out;
  out.log_value = r.log_t - kLog2Pi + e0;
  out.value = std::exp(out.log_value);
  out.est_error = r.est_error;
  return out;
}

GEvalResult g_core(double t, int n, const MeijerGConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("g_core: t must be > 0");
  if (n < 1) throw std::invalid_argument("g_core: n must be >= 1");
  const double root = std::pow(std::max(t, 1.0), 1.0 / n);
  return n * root <= 40.0 ? g_core_series(t, n, cfg) : g_core_mb(t, n, cfg);
}

LogProb survival_log(int k, int n, double r2, const MeijerGConfig& cfg) {
  if (k < 1) throw std::invalid_argument("survival_log: k must be >= 1");
  if (n < 1) throw std::invalid_argument("survival_log: n must be >= 1");
  if (!(r2 >= 0.0)) throw std::domain_error("survival_log: r2 must be >= 0");
  detail::check_config(cfg);
  if (r2 == 0.0) return LogProb{0.0};

  if (std::pow(r2, 1.0 / n) < 0.5 * k) {
    // Deep left tail: complement of the lower cdf, safe in linear space.
    const LogProb lower = cdf_lower_log(k, n, r2, cfg);
    const double lc = lower.log_value;
    if (lc >= 0.0) return LogProb{0.0};  // cdf underflowed to zero mass
    // d/dlc log(1 - e^lc) = -e^lc / (1 - e^lc)
    const double amp = std::exp(lc - log1mexp(lc));
    return LogProb{log1mexp(lc), lower.est_error * amp + 1e-16};
  }

  const double big_l = std::log(r2);
  const double c = solve_survival_offset(k, n, big_l);
  const double sigma =
      1.0 / std::sqrt(n * detail::trigamma(k + c) + 1.0 / (c * c));
  const double h0 = std::min({cfg.quad_step, 0.4 * sigma, 0.15 * c});
  const double e0 = -c * big_l + n * log_gamma(double(k) + c) - std::log(c);

  auto efn = [&](double y) {
    const std::complex<double> s(c, y);
    return -s * big_l + double(n) * log_gamma(double(k) + s) - std::log(s);
  };
  // The integrand modulus decays on the y-scale of Gamma(k+s), roughly k+c,
  // so the sweep must run to the magnitude cut rather than a sigma-based cap.
  const ContourResult r =
      trap_contour(efn, e0, h0, 0.5 * M_PI * n, cfg.quad_halfwidth);

  double lp = r.log_t - kLog2Pi + e0 - n * log_gamma(double(k));
  double est = r.est_error + 2.3e-16 * (1.0 + std::fabs(lp));
  // The integral equals the survival probability; tiny positive overshoots can
  // appear when the probability is within rounding of 1.
  if (lp > 0.0) {
    if (lp > 1e-9)
      throw AccuracyError("survival_log: probability exceeded 1", lp);
    est = std::max(est, lp);
    lp = 0.0;
  }
  return LogProb{lp, est};
}

double survival_asympt_log(int k, int n, double r) {
  if (k < 1) throw std::invalid_argument("survival_asympt_log: k must be >= 1");
  if (n < 1) throw std::invalid_argument("survival_asympt_log: n must be >= 1");
  if (!(r > 0.0)) throw std::domain_error("survival_asympt_log: r must be > 0");
  const double half_log_2pi = 0.5 * kLog2Pi;
  return (n - 1) * half_log_2pi - 0.5 * std::log(double(n)) -
         n * std::pow(r, 2.0 / n) + (2.0 * k - 1.0 - 1.0 / n) * std::log(r) -
         n * log_gamma(double(k));
}

}  // namespace ginprod
