#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ginprod/special.hpp"

// Residue-series route. The integrand Gamma(s)^n t^{-s} has order-n poles at
// s = -j; the residue at -j is the u^{n-1} coefficient of
//   t^j (-1)^{jn} (j!)^{-n} exp(-u log t + n phi(u)),
// where phi is the local log expansion of (s+j) Gamma(s). Its Taylor
// coefficients c_m come out as (-1)^m zeta(m)/m + H_j^{(m)}/m (harmonic sums),
// with c_1 = psi(j+1). The series alternates and cancels down from terms of
// size ~exp(n t^{1/n}) to a value ~exp(-n t^{1/n}), so it is accumulated in
// extended precision sized to that condition number.

namespace ginprod {
namespace {

class Big {
 public:
  explicit Big(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Big(const Big& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Big(Big&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Big& operator=(const Big& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Big& operator=(Big&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }

  static Big of(double x, mpfr_prec_t prec) {
    Big b(prec);
    mpfr_set_d(b.v_, x, MPFR_RNDN);
    return b;
  }
  static Big of(long x, mpfr_prec_t prec) {
    Big b(prec);
    mpfr_set_si(b.v_, x, MPFR_RNDN);
    return b;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sgn() const { return mpfr_sgn(v_); }
  bool zero() const { return mpfr_zero_p(v_); }
  long exp2() const { return mpfr_get_exp(v_); }

  Big& operator+=(const Big& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Big& operator-=(const Big& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Big& operator*=(const Big& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Big& operator/=(const Big& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend Big operator+(Big a, const Big& b) { return a += b; }
  friend Big operator-(Big a, const Big& b) { return a -= b; }
  friend Big operator*(Big a, const Big& b) { return a *= b; }
  friend Big operator/(Big a, const Big& b) { return a /= b; }

 private:
  mpfr_t v_;
};

Big big_inv_ui(unsigned long d, mpfr_prec_t prec) {
  Big b(prec);
  mpfr_set_ui(b.raw(), 1, MPFR_RNDN);
  mpfr_div_ui(b.raw(), b.raw(), d, MPFR_RNDN);
  return b;
}

// |a| < |b| ?
bool abs_less(const Big& a, const Big& b) {
  return mpfr_cmpabs(a.raw(), b.raw()) < 0;
}

mpfr_prec_t series_precision(double t, int n) {
  const double root = std::pow(std::max(t, 1.0), 1.0 / n);
  const double cond_bits = 2.9 * n * root + 8.0 * n;
  if (cond_bits > 8000.0)
    throw AccuracyError("residue series too ill-conditioned at this argument",
                        1.0);
  return static_cast<mpfr_prec_t>(160 + std::lround(cond_bits));
}

// Taylor data for the pole at s = -j, shared by both series consumers.
// a_m = n * c_m; advance() moves the harmonic sums from j-1 to j.
struct PoleCoeffs {
  int n;
  mpfr_prec_t prec;
  Big euler;
  std::vector<Big> zeta;  // zeta[m], m = 2..n-1
  std::vector<Big> hsum;  // H_j^{(m)}, m = 1..n-1
  std::vector<Big> a;     // a[m], m = 1..n-1; a[1] excludes the -log t part

  PoleCoeffs(int n, mpfr_prec_t prec)
      : n(n), prec(prec), euler(prec), zeta(n), hsum(n, Big(prec)), a(n, Big(prec)) {
    mpfr_const_euler(euler.raw(), MPFR_RNDN);
    for (int m = 2; m < n; ++m) {
      zeta[m] = Big(prec);
      mpfr_zeta_ui(zeta[m].raw(), m, MPFR_RNDN);
    }
  }

  void advance(long j) {  // j >= 1
    const Big inv_j = big_inv_ui(j, prec);
    Big p = inv_j;
    for (int m = 1; m < n; ++m) {
      hsum[m] += p;
      p *= inv_j;
    }
  }

  // a_1 = n (H_j - euler); callers subtract log t themselves.
  void fill(void) {
    if (n < 2) return;
    a[1] = hsum[1] - euler;
    mpfr_mul_si(a[1].raw(), a[1].raw(), n, MPFR_RNDN);
    for (int m = 2; m < n; ++m) {
      Big c = hsum[m];
      if (m % 2 == 0)
        c += zeta[m];
      else
        c -= zeta[m];
      mpfr_div_ui(c.raw(), c.raw(), m, MPFR_RNDN);
      mpfr_mul_si(c.raw(), c.raw(), n, MPFR_RNDN);
      a[m] = std::move(c);
    }
  }
};

}  // namespace

GEvalResult g_core_series(double t, int n, const MeijerGConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("g_core_series: t must be > 0");
  if (n < 1) throw std::invalid_argument("g_core_series: n must be >= 1");
  detail::check_config(cfg);

  const mpfr_prec_t prec = series_precision(t, n);
  PoleCoeffs pc(n, prec);

  Big logt(prec);
  mpfr_set_d(logt.raw(), t, MPFR_RNDN);
  mpfr_log(logt.raw(), logt.raw(), MPFR_RNDN);

  // Signed power/factorial factor (+-1)^{jn} t^j / (j!)^n.
  const Big t_signed = Big::of(n % 2 == 1 ? -t : t, prec);
  Big pw = Big::of(1L, prec);

  Big sum(prec);
  const Big tol = Big::of(cfg.series_tol, prec);
  std::vector<Big> e(n, Big(prec));
  long exp_max = -1000000000L;
  int small_run = 0;
  long j = 0;

  for (;; ++j) {
    if (j >= cfg.max_terms)
      throw ConvergenceError("g_core_series: term cap reached", j);
    if (j > 0) {
      pc.advance(j);
      Big jn = Big::of(j, prec);
      for (int i = 1; i < n; ++i) mpfr_mul_si(jn.raw(), jn.raw(), j, MPFR_RNDN);
      pw *= t_signed;
      pw /= jn;
    }
    pc.fill();

    // e_p coefficients of exp(a_1 u + a_2 u^2 + ...), a_1 completed with -log t.
    Big term(prec);
    if (n == 1) {
      term = pw;
    } else {
      Big a1 = pc.a[1] - logt;
      e[0] = Big::of(1L, prec);
      for (int p = 1; p < n; ++p) {
        Big acc = a1 * e[p - 1];
        for (int m = 2; m <= p; ++m) {
          Big contrib = pc.a[m] * e[p - m];
          mpfr_mul_si(contrib.raw(), contrib.raw(), m, MPFR_RNDN);
          acc += contrib;
        }
        mpfr_div_ui(acc.raw(), acc.raw(), p, MPFR_RNDN);
        e[p] = std::move(acc);
      }
      term = pw * e[n - 1];
    }

    sum += term;
    if (!term.zero()) exp_max = std::max(exp_max, term.exp2());

    if (j > 0 && !sum.zero()) {
      const Big thr = tol * sum;
      small_run = abs_less(term, thr) ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
  }

  if (sum.sgn() <= 0)
    throw AccuracyError("g_core_series: nonpositive sum, precision exhausted",
                        1.0);

  GEvalResult res;
  res.terms_used = j + 1;
  res.value = sum.to_double();
  Big lg = sum;
  mpfr_log(lg.raw(), lg.raw(), MPFR_RNDN);
  res.log_value = lg.to_double();
  const long shift = exp_max - sum.exp2() - (static_cast<long>(prec) - 53);
  res.est_error = 4.0 * cfg.series_tol +
                  static_cast<double>(res.terms_used) *
                      std::ldexp(1.0, static_cast<int>(std::max(shift, -1060L)));
  return res;
}

LogProb cdf_lower_log(int k, int n, double r2, const MeijerGConfig& cfg) {
  if (k < 1) throw std::invalid_argument("cdf_lower_log: k must be >= 1");
  if (n < 1) throw std::invalid_argument("cdf_lower_log: n must be >= 1");
  if (!(r2 > 0.0)) throw std::domain_error("cdf_lower_log: r2 must be > 0");
  detail::check_config(cfg);

  const mpfr_prec_t prec = series_precision(r2, n);
  PoleCoeffs pc(n, prec);

  Big x = Big::of(r2, prec);
  Big logx = x;
  mpfr_log(logx.raw(), logx.raw(), MPFR_RNDN);

  // Powers logx^d, d = 0..n-1.
  std::vector<Big> lpow(n, Big(prec));
  lpow[0] = Big::of(1L, prec);
  for (int d = 1; d < n; ++d) lpow[d] = lpow[d - 1] * logx;

  // sigma_j = (+-1)^{jn}/(j!)^n and x^{k+j}, maintained multiplicatively.
  Big sigma = Big::of(1L, prec);
  Big xp(prec);
  mpfr_pow_ui(xp.raw(), x.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
  const double sgn_step = n % 2 == 1 ? -1.0 : 1.0;

  Big sum(prec);
  const Big tol = Big::of(cfg.series_tol, prec);
  // Polynomial coefficients in l = log x: e[p] has degree p.
  std::vector<std::vector<Big>> e(n);
  int small_run = 0;
  long j = 0;

  for (;; ++j) {
    if (j >= cfg.max_terms)
      throw ConvergenceError("cdf_lower_log: term cap reached", j);
    if (j > 0) {
      pc.advance(j);
      Big jn = Big::of(j, prec);
      for (int i = 1; i < n; ++i) mpfr_mul_si(jn.raw(), jn.raw(), j, MPFR_RNDN);
      mpfr_mul_d(sigma.raw(), sigma.raw(), sgn_step, MPFR_RNDN);
      sigma /= jn;
      xp *= x;
    }
    pc.fill();

    // Build e_{n-1} as a polynomial in l, with a_1(l) = A - l, A = n psi(j+1).
    e[0] = {Big::of(1L, prec)};
    for (int p = 1; p < n; ++p) {
      std::vector<Big> acc(p + 1, Big(prec));
      for (int q = 0; q < p; ++q) {  // (A - l) * e[p-1]
        acc[q] += pc.a[1] * e[p - 1][q];
        acc[q + 1] -= e[p - 1][q];
      }
      for (int m = 2; m <= p; ++m) {
        for (int q = 0; q <= p - m; ++q) {
          Big contrib = pc.a[m] * e[p - m][q];
          mpfr_mul_si(contrib.raw(), contrib.raw(), m, MPFR_RNDN);
          acc[q] += contrib;
        }
      }
      for (auto& c : acc) mpfr_div_ui(c.raw(), c.raw(), p, MPFR_RNDN);
      e[p] = std::move(acc);
    }

    // integral_0^x y^{k+j-1} l^q dy = x^{k+j} sum_i (-1)^i q!/(q-i)! logx^{q-i} / p^{i+1}
    const unsigned long pdeg = static_cast<unsigned long>(k) + j;
    const Big pinv = big_inv_ui(pdeg, prec);
    Big inner(prec);
    for (int q = 0; q < n; ++q) {
      const Big& cq = e[n - 1][q];
      if (cq.zero()) continue;
      Big weight(prec);
      Big pfac = pinv;
      double fall = 1.0;
      double sign = 1.0;
      for (int i = 0; i <= q; ++i) {
        Big piece = lpow[q - i] * pfac;
        mpfr_mul_d(piece.raw(), piece.raw(), sign * fall, MPFR_RNDN);
        weight += piece;
        sign = -sign;
        fall *= static_cast<double>(q - i);
        pfac *= pinv;
      }
      inner += cq * weight;
    }

    Big term = sigma * xp * inner;
    sum += term;

    if (j > 0 && !sum.zero()) {
      const Big thr = tol * sum;
      small_run = abs_less(term, thr) ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
  }

  if (sum.sgn() <= 0)
    throw AccuracyError("cdf_lower_log: nonpositive sum, precision exhausted",
                        1.0);

  Big lg = sum;
  mpfr_log(lg.raw(), lg.raw(), MPFR_RNDN);
  Big lgk = Big::of(static_cast<long>(k), prec);
  int sgn_dummy = 0;
  mpfr_lgamma(lgk.raw(), &sgn_dummy, lgk.raw(), MPFR_RNDN);
  mpfr_mul_si(lgk.raw(), lgk.raw(), n, MPFR_RNDN);
  lg -= lgk;
  double out = lg.to_double();
  double est = cfg.series_tol + 2.3e-16 * (1.0 + std::fabs(out));
  if (out > 0.0) {
    if (out > 1e-10)
      throw AccuracyError("cdf_lower_log: cdf exceeded 1", out);
    est = std::max(est, out);
    out = 0.0;
  }
  return LogProb{out, est};
}

}  // namespace ginprod
