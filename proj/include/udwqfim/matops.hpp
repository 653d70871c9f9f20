#ifndef UDWQFIM_MATOPS_HPP
#define UDWQFIM_MATOPS_HPP

#include <Eigen/Dense>
#include <complex>

#include "udwqfim/errors.hpp"

// Dense complex matrix kernel used by the rest of the library: Kronecker
// products, column-stacking vectorization, Hermitian eigendecomposition
// and PSD pseudo-inversion. Everything here is a pure function; matrices
// are plain Eigen values with no shared state.

namespace udwqfim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
// Absolute/relative floor used by all matrix comparisons. Magnitudes span
// many orders of magnitude across sweeps, so comparisons are always
// max(atol, rtol * scale).
inline constexpr double atol = 1e-12;
inline constexpr double rtol = 1e-10;
// Hermiticity slack for inputs that are Hermitian by construction.
inline constexpr double hermitian = 1e-12;
// Relative spectral cutoff of the PSD pseudo-inverse.
inline constexpr double pinv_rel = 1e-12;
}  // namespace tol

// max |a_ij|; zero for empty matrices.
double max_abs(const Matrix& a);

// Entrywise comparison with mixed absolute/relative tolerance.
bool approx_equal(const Matrix& a, const Matrix& b, double atol = tol::atol,
                  double rtol = tol::rtol);

bool is_hermitian(const Matrix& a, double rel = tol::hermitian);

// Kronecker product: entry ((i*b.rows+k),(j*b.cols+l)) = a(i,j)*b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

// Column-stacking vectorization: (x11, x21, ..., xn1, x12, ..., xnn)^T.
// Satisfies vectorize(A*X*B) = kron(B^T, A) * vectorize(X).
Vector vectorize(const Matrix& x);

// Inverse of vectorize for square targets. Throws ShapeError unless
// v.size() == n*n.
Matrix unvectorize(const Vector& v, Eigen::Index n);

struct EighResult {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // orthonormal columns
};

// Hermitian eigendecomposition. Throws ContractError when the input is
// not Hermitian within tolerance.
EighResult eigh(const Matrix& h);

// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix. Eigenvalues
// <= rel_tol * lambda_max are treated as exact zeros; a negative
// eigenvalue beyond -1e-10 * ||h|| throws ContractError.
Matrix pinv_psd(const Matrix& h, double rel_tol = tol::pinv_rel);

}  // namespace udwqfim

#endif
