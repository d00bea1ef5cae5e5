#pragma once

#include <complex>

#include "ginprod/types.hpp"

namespace ginprod {

// Tuning knobs for the two evaluation routes of the product-ensemble core
// function (the residue series and the contour integral).
struct MeijerGConfig {
  double contour_offset = 0.5;   // minimum real part of the integration contour
  double quad_step = 0.25;       // initial trapezoid step along the imaginary axis
  double quad_halfwidth = 40.0;  // initial truncation height of the contour
  double series_tol = 1e-16;     // relative term size that ends the residue series
  long max_terms = 20000;        // cap on residue terms before giving up
};

struct GEvalResult {
  double value = 0.0;      // may underflow to zero; log_value stays valid
  double log_value = 0.0;  // log of the (positive) result
  double est_error = 0.0;  // routine's own relative error model
  long terms_used = 0;
};

// Real log-gamma, x > 0.
double log_gamma(double x);

// Principal-branch log-gamma for Re z > 0 (Stirling plus recurrence).
std::complex<double> log_gamma(std::complex<double> z);

// Digamma, x > 0.
double digamma(double x);

namespace detail {
double trigamma(double x);
// Inverse of digamma on (0, inf).
double psi_inverse(double y);
void check_config(const MeijerGConfig& cfg);
}  // namespace detail

// Core density function of the squared-modulus product law: the value at t of
// the n-fold Mellin convolution kernel with all shape offsets zero.
// g_core(t, 1) == exp(-t); g_core(t, 2) == 2*K0(2*sqrt(t)).
//
// Two independent routes: a residue series over the poles of Gamma^n (summed
// in extended precision because the series alternates and loses ~2*n*t^(1/n)
// digits to cancellation), and a saddle-point contour integral evaluated by
// the trapezoid rule with step-halving error control.
GEvalResult g_core_series(double t, int n, const MeijerGConfig& cfg = {});
GEvalResult g_core_mb(double t, int n, const MeijerGConfig& cfg = {});

// Route dispatcher: series where its precision cost is small, contour otherwise.
GEvalResult g_core(double t, int n, const MeijerGConfig& cfg = {});

// P{squared modulus of the k-th radius > r2} for the n-factor product law,
// in log space. Contour route for large r2, complemented lower cdf below the
// crossover r2^(1/n) < k/2.
LogProb survival_log(int k, int n, double r2, const MeijerGConfig& cfg = {});

// log P{squared modulus of the k-th radius <= r2}, by termwise integration of
// the residue series.
LogProb cdf_lower_log(int k, int n, double r2, const MeijerGConfig& cfg = {});

// Leading-order large-r expansion of survival_log (relative error O(r^{-2/n})).
double survival_asympt_log(int k, int n, double r);

}  // namespace ginprod
