#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ginprod/types.hpp"

namespace ginprod {

// Splittable counter-seeded stream: state is derived from (seed, stream) by a
// splitmix64 chain, so substream s is reproducible independently of thread
// scheduling. Core generator is xoshiro256++.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform();                         // strictly inside (0, 1)
  double normal();                          // N(0, 1)
  std::complex<double> complex_gaussian();  // E z = 0, E|z|^2 = 1
  double gamma(int k);                      // Gamma(k, 1), k >= 1

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct RadiiSample {
  EnsembleParams params;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> batch;  // squared radii, one inner vector per draw
};

struct ScaledMatrix {
  Eigen::MatrixXcd entries;
  double log_scale = 0.0;  // represented matrix = entries * exp(log_scale)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

double sample_gamma(int k, RngStream& rng);

// Sum of k exponentials; independent reference path for tests, k <= 16.
double sample_gamma_ref_sumexp(int k, RngStream& rng);

RadiiSample sample_radii(const EnsembleParams& params, long count,
                         std::uint64_t seed);

ScaledMatrix sample_product_matrix(const EnsembleParams& params, RngStream& rng);

// Sorted moduli of the eigenvalues of the represented matrix.
std::vector<double> eigen_moduli(const ScaledMatrix& mat);

}  // namespace ginprod
