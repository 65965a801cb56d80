#pragma once

// Random states shared by the test binaries.

#include <random>

#include "symppt/symstate.hpp"

namespace testing_support {

inline symppt::PureSymmetricState random_pure(int n, int d, std::mt19937& rng) {
  const int dim = static_cast<int>(symppt::symmetric_dimension(n, d).get_si());
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = {g(rng), g(rng)};
  v.normalize();
  return symppt::PureSymmetricState(n, d, v);
}

// Ginibre-style mixed state G G^dagger / Tr.
inline symppt::SymmetricDensityMatrix random_density(int n, int d, std::mt19937& rng) {
  const int dim = static_cast<int>(symppt::symmetric_dimension(n, d).get_si());
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd rho = m * m.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return symppt::SymmetricDensityMatrix(n, d, rho);
}

}  // namespace testing_support
