#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ginprod/sampler.hpp"

namespace ginprod {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  for (auto& w : s_) w = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  return (double(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double q = u * u + v * v;
    if (q > 0.0 && q < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(q) / q);
      spare_ = v * f;
      has_spare_ = true;
      return u * f;
    }
  }
}

std::complex<double> RngStream::complex_gaussian() {
  const double half = std::sqrt(0.5);
  const double re = half * normal();
  const double im = half * normal();
  return {re, im};
}

double RngStream::gamma(int k) { return sample_gamma(k, *this); }

double sample_gamma(int k, RngStream& rng) {
  if (k < 1) throw std::invalid_argument("sample_gamma: k must be >= 1");
  // Marsaglia-Tsang squeeze-rejection, valid for shape >= 1.
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_gamma_ref_sumexp(int k, RngStream& rng) {
  if (k < 1 || k > 16)
    throw std::invalid_argument("sample_gamma_ref_sumexp: k must be in [1, 16]");
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc -= std::log(rng.uniform());
  return acc;
}

RadiiSample sample_radii(const EnsembleParams& params, long count,
                         std::uint64_t seed) {
  check_params(params);
  if (count < 1) throw std::invalid_argument("sample_radii: count must be >= 1");
  RadiiSample out;
  out.params = params;
  out.seed = seed;
  out.batch.resize(count);
  RngStream rng(seed, 1);
  for (long d = 0; d < count; ++d) {
    auto& row = out.batch[d];
    row.resize(params.N);
    for (long k = 1; k <= params.N; ++k) {
      double log_prod = 0.0;
      for (int j = 0; j < params.n; ++j)
        log_prod += std::log(sample_gamma(int(k), rng));
      row[k - 1] = std::exp(log_prod);
    }
  }
  return out;
}

ScaledMatrix sample_product_matrix(const EnsembleParams& params, RngStream& rng) {
  check_params(params);
  const long N = params.N;
  ScaledMatrix out;
  auto draw_factor = [&] {
    Eigen::MatrixXcd x(N, N);
    for (long r = 0; r < N; ++r)
      for (long c = 0; c < N; ++c) x(r, c) = rng.complex_gaussian();
    return x;
  };
  auto rescale = [&](Eigen::MatrixXcd& m) {
    const double mx = m.cwiseAbs().maxCoeff();
    if (mx > 0.0) {
      m /= mx;
      out.log_scale += std::log(mx);
    }
  };
  Eigen::MatrixXcd prod = draw_factor();
  rescale(prod);
  for (int j = 1; j < params.n; ++j) {
    prod = (prod * draw_factor()).eval();
    rescale(prod);
  }
  out.entries = std::move(prod);
  return out;
}

std::vector<double> eigen_moduli(const ScaledMatrix& mat) {
  const long N = mat.entries.rows();
  if (N < 1 || mat.entries.cols() != N)
    throw std::invalid_argument("eigen_moduli: matrix must be square");
  if (N > 64) throw std::invalid_argument("eigen_moduli: size cap is 64");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mat.entries, false);
  if (solver.info() != Eigen::Success)
    throw EigensolverError("eigen_moduli: QR iteration did not converge",
                           mat.seed, mat.stream);
  std::vector<double> out(N);
  const double scale = std::exp(mat.log_scale);
  for (long i = 0; i < N; ++i) out[i] = std::abs(solver.eigenvalues()[i]) * scale;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ginprod
