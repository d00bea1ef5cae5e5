#pragma once

#include <complex>
#include <vector>

#include "ginprod/special.hpp"
#include "ginprod/types.hpp"

namespace ginprod {

struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> value() const { return {re, im}; }
  double abs2() const { return re * re + im * im; }
};

// Radially symmetric ensemble weight; diverges at the origin for n >= 2.
double weight_w_n(const ComplexPoint& z, int n);
double log_weight_w_n(double r2, int n);

// Reproducing kernel truncated at N terms, or summed to convergence when
// params.N is infinite. Hermitian: kernel(z, xi) == conj(kernel(xi, z)).
std::complex<double> kernel(const ComplexPoint& z, const ComplexPoint& xi,
                            const EnsembleParams& params);

// Log of the N-point intensity of the eigenvalue process (integrates to N!).
// Exactly permutation invariant; -inf when two points coincide.
double log_joint_density(std::vector<ComplexPoint> points, int n);

// Joint density of the eigenvalue moduli (symmetric in its arguments);
// permanent-based, so N is capped at 12.
double moduli_joint_density(std::vector<double> radii, int n);

// Density of the squared modulus of the k-th rank: a product of k-shaped
// gamma laws across the n factors.
double radial_density(int k, int n, double x);

namespace detail {
// Permanent of a row-major N x N matrix, Ryser's formula with Gray-code
// subset updates. Caller is responsible for scaling against overflow.
double permanent_ryser(const std::vector<double>& a, long n);
}  // namespace detail

}  // namespace ginprod
