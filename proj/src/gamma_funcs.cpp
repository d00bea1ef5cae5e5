#include <cmath>
#include <complex>

#include "ginprod/special.hpp"

namespace ginprod {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
#ifdef __GLIBC__
  int sign = 0;
  return lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace {

// B_{2k} / (2k (2k-1)) for the Stirling series of log Gamma.
constexpr double kStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,
};

std::complex<double> stirling_lgamma(std::complex<double> z) {
  const std::complex<double> zinv = 1.0 / z;
  const std::complex<double> zinv2 = zinv * zinv;
  std::complex<double> series = kStirling[7];
  for (int i = 6; i >= 0; --i) series = series * zinv2 + kStirling[i];
  static const double half_ln_2pi = 0.9189385332046727;
  return (z - 0.5) * std::log(z) - z + half_ln_2pi + series * zinv;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0))
    throw std::domain_error("log_gamma: Re z must be > 0");
  std::complex<double> shift = 0.0;
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling_lgamma(z) - shift;
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series: B_{2k} / (2k x^{2k}).
  const double w = 1.0 / (x * x);
  double series = 0.0;
  static const double coeff[] = {
      1.0 / 12.0,   -1.0 / 120.0,     1.0 / 252.0,  -1.0 / 240.0,
      1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0,
  };
  for (int i = 6; i >= 0; --i) series = (series + coeff[i]) * w;
  return acc + std::log(x) - 0.5 / x - series;
}

namespace detail {

double trigamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("trigamma: x must be > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double w = 1.0 / (x * x);
  double series = 0.0;
  static const double coeff[] = {
      1.0 / 6.0,  -1.0 / 30.0,    1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
  };
  for (int i = 6; i >= 0; --i) series = (series + coeff[i]) * w;
  return acc + 1.0 / x + 0.5 * w + series / x;
}

double psi_inverse(double y) {
  // digamma is increasing and concave; Newton from a regime-matched start.
  double x = y > -2.0 ? std::exp(y) + 0.5 : -1.0 / (y + 0.5772156649015329);
  if (!(x > 0.0)) x = 1e-8;
  for (int it = 0; it < 60; ++it) {
    const double f = digamma(x) - y;
    double step = f / trigamma(x);
    if (step > 0.5 * x) step = 0.5 * x;  // keep the iterate positive
    x -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(x))) break;
  }
  return x;
}

void check_config(const MeijerGConfig& cfg) {
  if (!(cfg.contour_offset > 0.0))
    throw std::invalid_argument("config: contour_offset must be > 0");
  if (!(cfg.quad_step > 0.0))
    throw std::invalid_argument("config: quad_step must be > 0");
  if (!(cfg.quad_halfwidth > cfg.quad_step))
    throw std::invalid_argument("config: quad_halfwidth must exceed quad_step");
  if (!(cfg.series_tol > 0.0 && cfg.series_tol < 1.0))
    throw std::invalid_argument("config: series_tol must be in (0, 1)");
  if (cfg.max_terms < 1)
    throw std::invalid_argument("config: max_terms must be >= 1");
}

}  // namespace detail
}  // namespace ginprod
