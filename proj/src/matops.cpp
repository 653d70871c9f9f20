#include "udwqfim/matops.hpp"

#include <algorithm>
#include <string>

namespace udwqfim {

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool approx_equal(const Matrix& a, const Matrix& b, double atol, double rtol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max(max_abs(a), max_abs(b));
  const double bound = std::max(atol, rtol * scale);
  return max_abs(a - b) <= bound;
}

bool is_hermitian(const Matrix& a, double rel) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= rel * std::max(1.0, max_abs(a));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vectorize(const Matrix& x) {
  Vector v(x.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) v(k++) = x(i, j);
  return v;
}

Matrix unvectorize(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) {
    throw ShapeError("unvectorize: vector of size " + std::to_string(v.size()) +
                     " does not fill a " + std::to_string(n) + "x" +
                     std::to_string(n) + " matrix");
  }
  Matrix x(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = v(k++);
  return x;
}

EighResult eigh(const Matrix& h) {
  if (!is_hermitian(h)) {
    throw ContractError("eigh: input is not Hermitian within tolerance");
  }
  // Work on the symmetrized matrix so tiny asymmetries within tolerance
  // cannot leak into the result.
  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw ContractError("eigh: eigendecomposition failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix pinv_psd(const Matrix& h, double rel_tol) {
  EighResult e = eigh(h);
  const Eigen::Index n = h.rows();
  const double lam_max = e.eigenvalues.size() ? e.eigenvalues.maxCoeff() : 0.0;
  const double norm = e.eigenvalues.size() ? e.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  if (e.eigenvalues.size() && e.eigenvalues.minCoeff() < -1e-10 * std::max(norm, 1e-300)) {
    throw ContractError("pinv_psd: matrix has a negative eigenvalue beyond tolerance");
  }
  const double cutoff = rel_tol * std::max(lam_max, 0.0);
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (e.eigenvalues(k) > cutoff) {
      out.noalias() += (1.0 / e.eigenvalues(k)) * e.eigenvectors.col(k) *
                       e.eigenvectors.col(k).adjoint();
    }
  }
  return out;
}

}  // namespace udwqfim
