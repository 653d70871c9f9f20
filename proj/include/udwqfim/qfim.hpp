#ifndef UDWQFIM_QFIM_HPP
#define UDWQFIM_QFIM_HPP

#include "udwqfim/model.hpp"

// Quantum Fisher information of a state with respect to a tangent set,
// through two independent routes:
//
//   * the vectorization route: F_{uv} = 2 vec(d_u rho)^dag pinv(eta) vec(d_v rho)
//     with eta = rho^T x I + I x rho, pseudo-inverted on its support;
//   * the spectral route, summing <k|d_u rho|l><l|d_v rho|k> / (r_k + r_l)
//     over eigenpairs with r_k + r_l > 0.
//
// The vectorization route is the production path; the spectral route is
// kept as its oracle. Symmetric logarithmic derivatives come from
// vec(L) = 2 pinv(eta) vec(d rho).

namespace udwqfim {

using Matrix16 = Eigen::Matrix<Complex, 16, 16>;

// eta = rho^T x I + I x rho; Hermitian PSD with eigenvalues equal to the
// pairwise sums of the eigenvalues of rho.
Matrix16 build_eta(const DensityMatrix& rho);

// Pseudo-inverse of eta for one state, shared between the Fisher matrix
// and the SLDs so the 16x16 eigendecomposition runs once per point.
class EtaInverse {
 public:
  explicit EtaInverse(const DensityMatrix& rho, double rel_tol = tol::pinv_rel);

  Vector apply(const Vector& v) const;          // pinv(eta) * v
  double projector_residual(const Vector& v) const;  // ||(I - P_support) v|| / ||v||
  int support_rank() const { return rank_; }

 private:
  EighResult eig_;
  int rank_;
};

struct FisherResult {
  Eigen::MatrixXd fisher;       // m x m, real symmetric PSD
  std::vector<bool> unbounded;  // per tangent: support leakage detected
  int support_rank = 0;
};

// Residual threshold above which a tangent is reported as carrying
// information outside the state's support (entry flagged unbounded
// instead of silently truncated).
inline constexpr double support_leak_tol = 1e-8;

FisherResult qfim_vectorized(const DensityMatrix& rho, const TangentSet& tangents);

// Independent oracle for qfim_vectorized.
Eigen::MatrixXd qfim_spectral(const DensityMatrix& rho, const TangentSet& tangents);

// Symmetric logarithmic derivative for a single tangent; satisfies
// d rho = (L rho + rho L)/2 on the support of rho.
Matrix4 sld(const DensityMatrix& rho, const Matrix4& tangent);
Matrix4 sld(const EtaInverse& inv, const Matrix4& tangent);

struct Compatibility {
  Eigen::MatrixXd weak_commutativity;  // Im Tr(rho L_u L_v), antisymmetric
  Eigen::MatrixXd commutator_norms;    // Frobenius norm of [L_u, L_v]
  bool shared_eigenbasis = false;      // all pairwise commutators vanish
};

Compatibility compatibility(const DensityMatrix& rho, const std::vector<Matrix4>& slds);

struct QfimReport {
  std::vector<Axis> axes;
  FisherResult fisher;
  std::vector<Matrix4> slds;
  Compatibility compat;
};

QfimReport qfim_report(const DensityMatrix& rho, const TangentSet& tangents);

}  // namespace udwqfim

#endif
