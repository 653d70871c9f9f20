#ifndef UDWQFIM_TEST_HELPERS_HPP
#define UDWQFIM_TEST_HELPERS_HPP

#include <random>

#include "udwqfim/matops.hpp"

namespace udwqfim::testing {

inline Matrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

inline Matrix random_hermitian(Eigen::Index n, std::mt19937& rng) {
  const Matrix a = random_complex(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

inline Matrix random_psd(Eigen::Index n, Eigen::Index rank, std::mt19937& rng) {
  const Matrix a = random_complex(n, rank, rng);
  return a * a.adjoint();
}

}  // namespace udwqfim::testing

#endif
