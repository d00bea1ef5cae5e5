#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginprod/sampler.hpp"
#include "ginprod/stats.hpp"
#include "mc_driver.hpp"

namespace ginprod {

double kolmogorov_q(double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("kolmogorov_q: lambda >= 0");
  if (lambda < 0.02) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int i = 1; i <= 1000; ++i) {
    const double term = std::exp(-2.0 * double(i) * double(i) * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KSResult gof_ks(std::vector<double> sample_a, std::vector<double> sample_b) {
  if (sample_a.empty() || sample_b.empty())
    throw std::invalid_argument("gof_ks: samples must be nonempty");
  std::sort(sample_a.begin(), sample_a.end());
  std::sort(sample_b.begin(), sample_b.end());
  const long na = long(sample_a.size());
  const long nb = long(sample_b.size());
  double d = 0.0;
  long ia = 0;
  long ib = 0;
  while (ia < na && ib < nb) {
    const double v = std::min(sample_a[ia], sample_b[ib]);
    while (ia < na && sample_a[ia] == v) ++ia;
    while (ib < nb && sample_b[ib] == v) ++ib;
    d = std::max(d, std::fabs(double(ia) / na - double(ib) / nb));
  }
  d = std::max(d, std::fabs(double(ia) / na - double(ib) / nb));

  const double ne = double(na) * double(nb) / double(na + nb);
  const double root = std::sqrt(ne);
  const double lambda = (root + 0.12 + 0.11 / root) * d;
  KSResult out;
  out.statistic = d;
  out.p_value = kolmogorov_q(lambda);
  out.size_a = na;
  out.size_b = nb;
  return out;
}

KSResult validate_theorem1(int n, long N, long draws, std::uint64_t seed,
                           int radii_n) {
  if (n < 1) throw std::invalid_argument("validate_theorem1: n must be >= 1");
  if (N < 1 || N > 16)
    throw std::invalid_argument("validate_theorem1: N must be in [1, 16]");
  if (draws < 500)
    throw std::invalid_argument("validate_theorem1: need at least 500 draws");
  const int rn = radii_n == 0 ? n : radii_n;
  if (rn < 1)
    throw std::invalid_argument("validate_theorem1: radii_n must be >= 1");

  const EnsembleParams matrix_params{n, N};
  std::vector<double> eig;
  eig.reserve(std::size_t(N) * std::size_t(draws));
  for (long d = 0; d < draws; ++d) {
    const std::uint64_t stream = detail::kStreamValidateMatrix + std::uint64_t(d);
    RngStream rng(seed, stream);
    ScaledMatrix mat = sample_product_matrix(matrix_params, rng);
    mat.seed = seed;
    mat.stream = stream;
    for (double v : eigen_moduli(mat)) eig.push_back(v * v);
  }

  const EnsembleParams radii_params{rn, N};
  const RadiiSample radii = sample_radii(radii_params, draws, seed);
  std::vector<double> rad;
  rad.reserve(std::size_t(N) * std::size_t(draws));
  for (const auto& row : radii.batch)
    for (double v : row) rad.push_back(v);

  return gof_ks(std::move(eig), std::move(rad));
}

}  // namespace ginprod
