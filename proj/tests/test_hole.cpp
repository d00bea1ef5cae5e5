#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ginprod/hole.hpp"
#include "ginprod/special.hpp"
#include "ginprod/types.hpp"
#include "support/oracles.hpp"

using namespace ginprod;

TEST_CASE("exact hole: closed forms and the gamma oracle") {
  CHECK(std::fabs(hole_exact_log({1, 2}, 1.0).log_value -
                  std::log(2.0 * std::exp(-2.0))) < 1e-12);
  const double by_oracle = oracles::log_reg_upper_gamma(1, 1.0) +
                           oracles::log_reg_upper_gamma(2, 1.0);
  CHECK(std::fabs(hole_exact_log({1, 2}, 1.0).log_value - by_oracle) < 1e-11);
  for (double r : {0.5, 1.0, 2.0}) {
    CHECK(std::fabs(hole_exact_log({1, 1}, r).log_value + r * r) < 1e-12);
  }
  CHECK(std::fabs(hole_exact_log({3, 4}, 1e-8).log_value) < 1e-10);
  CHECK_THROWS_AS(hole_exact_log({1, 1}, -1.0), std::domain_error);
  CHECK_THROWS_AS(hole_exact_log({1, EnsembleParams::kInfiniteN}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("exact hole: factorization and monotonicity") {
  const EnsembleParams p{2, 4};
  for (double r : {0.5, 1.0, 1.8}) {
    double sum = 0.0;
    for (int k = 1; k <= p.N; ++k)
      sum += survival_log(k, p.n, r * r).log_value;
    CHECK(std::fabs(hole_exact_log(p, r).log_value - sum) < 1e-12);
  }
  double prev = 0.0;
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double cur = hole_exact_log(p, r).log_value;
    CHECK(cur < prev);
    prev = cur;
  }
  for (long N : {1L, 2L, 3L, 4L}) {
    if (N > 1) {
      CHECK(hole_exact_log({2, N}, 1.0).log_value <
            hole_exact_log({2, N - 1}, 1.0).log_value);
    }
  }
}

TEST_CASE("asymptotic hole: n=1 N=1 exactness and trend") {
  for (double r : {1.0, 2.0, 5.0}) {
    CHECK(std::fabs(hole_asympt_log({1, 1}, r) + r * r) < 1e-12);
    CHECK(std::fabs(hole_asympt_log({1, 1}, r) -
                    hole_exact_log({1, 1}, r).log_value) < 1e-12);
  }

  const EnsembleParams p{2, 2};
  double prev_norm = 0.0;
  double prev_gap = 0.0;
  bool first = true;
  for (double r : {20.0, 40.0, 80.0}) {
    const double exact = hole_exact_log(p, r).log_value;
    const double asympt = hole_asympt_log(p, r);
    const double norm = exact / std::pow(r, 2.0 / p.n);
    const double gap = std::fabs(exact - asympt);
    if (!first) {
      CHECK(std::fabs(norm - -4.0) < std::fabs(prev_norm - -4.0));
      const double shrink = gap / prev_gap;
      CHECK(shrink > 0.3);
      CHECK(shrink < 0.8);
    }
    first = false;
    prev_norm = norm;
    prev_gap = gap;
  }
  CHECK(std::fabs(prev_norm - -4.0) < 0.25);
}

TEST_CASE("infinite hole: anchors and the large-N limit") {
  const HoleInfinite a = hole_infinite_log(1, 1.5, 1e-12);
  CHECK(std::fabs(a.value.log_value - -4.148495933837781993823165) < 1e-10);
  const HoleInfinite b = hole_infinite_log(1, 3.0, 1e-12);
  CHECK(std::fabs(b.value.log_value - -34.5696059460660237234116) < 1e-9);
  CHECK(b.truncation_rank > 9);
  CHECK(b.tail_bound < 1e-12);
  CHECK(b.value.est_error >= b.tail_bound);

  const double big_n = hole_exact_log({1, 1000}, 3.0).log_value;
  CHECK(std::fabs(b.value.log_value - big_n) < 1e-8);
}

TEST_CASE("infinite hole: bracketing by the computable bounds") {
  for (int n : {1, 2, 3}) {
    for (double r : {2.0, 4.0, 8.0}) {
      const HoleBounds bounds = hole_bounds_infinite(n, r);
      const double v = hole_infinite_log(n, r, 1e-12).value.log_value;
      // The reported value subtracts its own tail bound, so allow that slack
      // when it coincides with the n=1 lower bound.
      CHECK(bounds.lower_log <= v + 1e-9);
      CHECK(v <= bounds.upper_log);
    }
  }
}

TEST_CASE("infinite hole: normalized decay approaches -n/4") {
  for (int n : {1, 2, 3}) {
    double dist_prev = 0.0;
    bool first = true;
    for (double r : {2.0, 4.0, 8.0, 16.0}) {
      const double v = hole_infinite_log(n, r, 1e-10).value.log_value;
      const double norm = v / std::pow(r, 4.0 / n);
      const double dist = std::fabs(norm + n / 4.0);
      if (!first) CHECK(dist < dist_prev);
      first = false;
      dist_prev = dist;
    }
    CHECK(dist_prev < 0.15 * n);
  }
}

TEST_CASE("infinite bounds: n=1 lower bound collapses to the product") {
  for (double r : {1.5, 2.0, 4.0}) {
    const HoleBounds b = hole_bounds_infinite(1, r);
    const double v = hole_infinite_log(1, r, 1e-12).value.log_value;
    CHECK(std::fabs(b.lower_log - v) < 1e-9);
  }
  CHECK_THROWS_AS(hole_bounds_infinite(2, 0.5), std::domain_error);
}

TEST_CASE("infinite bounds: normalized band as r grows") {
  for (int n : {1, 2}) {
    for (double r : {4.0, 8.0, 16.0}) {
      const HoleBounds b = hole_bounds_infinite(n, r);
      CHECK(b.lower_log <= b.upper_log);
      const double s = std::pow(r, 4.0 / n);
      CHECK(b.upper_log / s > -n / 4.0 - 0.6);
      CHECK(b.lower_log / s < -n / 4.0 + 0.6);
    }
    const HoleBounds wide = hole_bounds_infinite(n, 16.0);
    const double s = std::pow(16.0, 4.0 / n);
    CHECK(std::fabs(wide.upper_log / s - -n / 4.0) < 0.2 * n);
    CHECK(std::fabs(wide.lower_log / s - -n / 4.0) < 0.2 * n);
  }
}

TEST_CASE("hole monte carlo: agreement, determinism, degenerate radius") {
  const EnsembleParams p{2, 3};
  const McResult mc = hole_mc(p, 1.0, 30000, 2024);
  const double exact = std::exp(hole_exact_log(p, 1.0).log_value);
  const double sigma = std::sqrt(exact * (1.0 - exact) / 30000.0);
  CHECK(std::fabs(mc.estimate - exact) <= 3.0 * sigma);
  CHECK(mc.halfwidth > 0.0);
  CHECK(mc.samples == 30000);

  const McResult rep = hole_mc(p, 1.0, 30000, 2024);
  CHECK(rep.estimate == mc.estimate);
  CHECK(rep.halfwidth == mc.halfwidth);

  const McResult tiny = hole_mc(p, 1e-9, 500, 3);
  CHECK(tiny.estimate == 1.0);

  CHECK_THROWS_AS(hole_mc(p, 1.0, 50, 0), std::invalid_argument);
}

TEST_CASE("hole monte carlo: thread count does not change the estimate") {
  const EnsembleParams p{1, 2};
  const McResult one = hole_mc(p, 0.8, 40000, 11, 1);
  const McResult four = hole_mc(p, 0.8, 40000, 11, 4);
  CHECK(one.estimate == four.estimate);
  CHECK(one.halfwidth == four.halfwidth);
}

TEST_CASE("wilson interval covers the point estimate sanely") {
  const McResult mc = hole_mc({1, 1}, 3.0, 1000, 5);
  // At radius 3 the hole probability is e^{-9}; zero hits are typical but the
  // interval must stay positive and conservative.
  CHECK(mc.estimate >= 0.0);
  CHECK(mc.halfwidth > 0.0);
  CHECK(mc.estimate + mc.halfwidth > std::exp(-9.0));
}
