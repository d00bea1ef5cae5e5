#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ginprod/hole.hpp"
#include "ginprod/sampler.hpp"
#include "ginprod/stats.hpp"
#include "ginprod/types.hpp"

using namespace ginprod;

TEST_CASE("rng: determinism and basic ranges") {
  RngStream a(99, 3);
  RngStream b(99, 3);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream u(5, 0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("rng: distinct streams are uncorrelated") {
  const long count = 20000;
  std::vector<std::vector<double>> seq;
  for (std::uint64_t s = 0; s < 4; ++s) {
    RngStream rng(777, s);
    std::vector<double> xs(count);
    for (auto& x : xs) x = rng.uniform() - 0.5;
    seq.push_back(std::move(xs));
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      double dot = 0.0;
      for (long t = 0; t < count; ++t) dot += seq[i][t] * seq[j][t];
      const double corr = dot / (count / 12.0);
      CHECK(std::fabs(corr) < 5.0 / std::sqrt(double(count)));
    }
  }
}

TEST_CASE("gamma sampling: moments and rejection validity") {
  CHECK_THROWS_AS([] {
    RngStream rng(1, 0);
    sample_gamma(0, rng);
  }(), std::invalid_argument);

  RngStream rng(31, 0);
  const long count = 100000;
  double sum = 0.0;
  for (long i = 0; i < count; ++i) {
    const double x = sample_gamma(4, rng);
    CHECK(x > 0.0);
    sum += x;
  }
  const double mean = sum / double(count);
  CHECK(std::fabs(mean - 4.0) < 5.0 * 2.0 / std::sqrt(double(count)));
}

TEST_CASE("gamma sampling: k=1 is exponential") {
  RngStream rng(8, 0);
  std::vector<double> a(8000), b(8000);
  for (auto& x : a) x = sample_gamma(1, rng);
  for (auto& x : b) x = -std::log(rng.uniform());
  const KSResult ks = gof_ks(a, b);
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("gamma sampling: k=3 matches the sum-of-exponentials path") {
  RngStream rng(12, 0);
  std::vector<double> a(8000), b(8000);
  for (auto& x : a) x = sample_gamma(3, rng);
  for (auto& x : b) x = sample_gamma_ref_sumexp(3, rng);
  const KSResult ks = gof_ks(a, b);
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("radii: reproducible, positive, correct shape") {
  const EnsembleParams p{2, 4};
  const RadiiSample s1 = sample_radii(p, 50, 4242);
  const RadiiSample s2 = sample_radii(p, 50, 4242);
  CHECK(s1.batch == s2.batch);
  CHECK(s1.params.n == 2);
  CHECK(s1.params.N == 4);
  CHECK(s1.seed == 4242);
  CHECK(s1.batch.size() == 50);
  for (const auto& row : s1.batch) {
    CHECK(row.size() == 4);
    for (double v : row) CHECK(v > 0.0);
  }
  const RadiiSample s3 = sample_radii(p, 50, 4243);
  CHECK(s1.batch != s3.batch);
  CHECK_THROWS_AS(sample_radii({1, EnsembleParams::kInfiniteN}, 10, 0),
                  std::invalid_argument);
}

TEST_CASE("radii: squared radius means are k^n") {
  const long count = 20000;
  for (int n : {1, 2, 3}) {
    const RadiiSample s = sample_radii({n, 5}, count, 606 + n);
    for (int k = 1; k <= 5; ++k) {
      double sum = 0.0;
      for (const auto& row : s.batch) sum += row[k - 1];
      const double mean = sum / double(count);
      const double second = std::pow(double(k) * (k + 1.0), n);
      const double var = second - std::pow(double(k), 2 * n);
      const double se = std::sqrt(var / double(count));
      CHECK(std::fabs(mean - std::pow(double(k), n)) < 5.0 * se);
    }
  }
}

TEST_CASE("radii: rank-1 single factor is exponential") {
  const RadiiSample s = sample_radii({1, 1}, 8000, 55);
  std::vector<double> a;
  for (const auto& row : s.batch) a.push_back(row[0]);
  RngStream rng(56, 0);
  std::vector<double> b(8000);
  for (auto& x : b) x = -std::log(rng.uniform());
  CHECK(gof_ks(a, b).p_value > 0.001);
}

TEST_CASE("radii: empirical hole frequency tracks the exact product") {
  const EnsembleParams p{2, 3};
  const double r2 = 1.0;
  const long count = 20000;
  const RadiiSample s = sample_radii(p, count, 9001);
  long hits = 0;
  for (const auto& row : s.batch) {
    bool all_out = true;
    for (double v : row) all_out = all_out && v > r2;
    if (all_out) ++hits;
  }
  const double expect = std::exp(hole_exact_log(p, 1.0).log_value);
  const double sigma = std::sqrt(expect * (1.0 - expect) / double(count));
  CHECK(std::fabs(double(hits) / double(count) - expect) <= 3.0 * sigma);
}

TEST_CASE("product matrix: scaled form equals the raw product") {
  const EnsembleParams p{2, 3};
  RngStream rng(64, 0);
  RngStream replay = rng;
  const ScaledMatrix mat = sample_product_matrix(p, rng);

  auto draw = [&replay](long N) {
    Eigen::MatrixXcd x(N, N);
    for (long r = 0; r < N; ++r)
      for (long c = 0; c < N; ++c) x(r, c) = replay.complex_gaussian();
    return x;
  };
  Eigen::MatrixXcd raw = draw(3);
  for (int j = 1; j < p.n; ++j) raw = (raw * draw(3)).eval();

  const Eigen::MatrixXcd rebuilt = mat.entries * std::exp(mat.log_scale);
  CHECK((rebuilt - raw).cwiseAbs().maxCoeff() <=
        1e-12 * raw.cwiseAbs().maxCoeff());
  const double mx = mat.entries.cwiseAbs().maxCoeff();
  CHECK(mx >= 0.5);
  CHECK(mx <= 2.0);
}

TEST_CASE("product matrix: single entry modulus squared is exponential") {
  RngStream rng(21, 0);
  std::vector<double> a(10000);
  for (auto& x : a) {
    const ScaledMatrix m = sample_product_matrix({1, 1}, rng);
    const std::complex<double> e =
        m.entries(0, 0) * std::exp(m.log_scale);
    x = std::norm(e);
  }
  RngStream ref(22, 0);
  std::vector<double> b(10000);
  for (auto& x : b) x = -std::log(ref.uniform());
  CHECK(gof_ks(a, b).p_value > 0.001);
}

TEST_CASE("product matrix: entry statistics at n=1") {
  RngStream rng(77, 0);
  const long draws = 2000;
  std::vector<double> re, im;
  std::vector<double> e01re, e10re;
  for (long d = 0; d < draws; ++d) {
    const ScaledMatrix m = sample_product_matrix({1, 2}, rng);
    const Eigen::MatrixXcd x = m.entries * std::exp(m.log_scale);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        re.push_back(x(r, c).real());
        im.push_back(x(r, c).imag());
      }
    e01re.push_back(x(0, 1).real());
    e10re.push_back(x(1, 0).real());
  }
  double mr = 0.0, mi = 0.0, vr = 0.0;
  for (std::size_t i = 0; i < re.size(); ++i) {
    mr += re[i];
    mi += im[i];
    vr += re[i] * re[i];
  }
  const double count = double(re.size());
  mr /= count;
  mi /= count;
  vr /= count;
  const double se_mean = std::sqrt(0.5 / count);
  CHECK(std::fabs(mr) < 5.0 * se_mean);
  CHECK(std::fabs(mi) < 5.0 * se_mean);
  CHECK(std::fabs(vr - 0.5) < 5.0 * 0.5 * std::sqrt(2.0 / count));
  double cross = 0.0;
  for (long d = 0; d < draws; ++d) cross += e01re[d] * e10re[d];
  cross /= 0.5 * double(draws);
  CHECK(std::fabs(cross) < 5.0 / std::sqrt(double(draws)));
}

TEST_CASE("eigen moduli: fixed matrices") {
  ScaledMatrix diag;
  diag.entries = Eigen::MatrixXcd::Zero(2, 2);
  diag.entries(0, 0) = std::complex<double>(1.0, 0.0);
  diag.entries(1, 1) = std::complex<double>(0.0, -2.0);
  const auto m = eigen_moduli(diag);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(2.0).epsilon(1e-12));

  ScaledMatrix one;
  one.entries = Eigen::MatrixXcd::Constant(1, 1, std::complex<double>(3.0, -4.0));
  const auto s = eigen_moduli(one);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == doctest::Approx(5.0).epsilon(1e-13));

  // Companion matrix of x^2 - 3x + 2 = (x-1)(x-2).
  ScaledMatrix comp;
  comp.entries = Eigen::MatrixXcd::Zero(2, 2);
  comp.entries(0, 0) = 3.0;
  comp.entries(0, 1) = -2.0;
  comp.entries(1, 0) = 1.0;
  const auto c = eigen_moduli(comp);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("eigen moduli: scale factor and ordering") {
  ScaledMatrix m;
  m.entries = Eigen::MatrixXcd::Zero(3, 3);
  m.entries(0, 0) = 0.5;
  m.entries(1, 1) = std::complex<double>(0.0, 0.25);
  m.entries(2, 2) = 1.0;
  m.log_scale = std::log(4.0);
  const auto mods = eigen_moduli(m);
  REQUIRE(mods.size() == 3);
  CHECK(mods[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mods[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mods[2] == doctest::Approx(4.0).epsilon(1e-12));

  ScaledMatrix bad;
  bad.entries = Eigen::MatrixXcd::Zero(2, 3);
  CHECK_THROWS_AS(eigen_moduli(bad), std::invalid_argument);
  ScaledMatrix big;
  big.entries = Eigen::MatrixXcd::Zero(65, 65);
  CHECK_THROWS_AS(eigen_moduli(big), std::invalid_argument);
}
