#include "udwqfim/qfim.hpp"

#include <cmath>

namespace udwqfim {

Matrix16 build_eta(const DensityMatrix& rho) {
  const Matrix4 m = rho.matrix();
  const Matrix4 id = Matrix4::Identity();
  return kron(m.transpose(), id) + kron(id, m);
}

EtaInverse::EtaInverse(const DensityMatrix& rho, double rel_tol)
    : eig_(eigh(build_eta(rho))), rank_(0) {
  const double cutoff = rel_tol * std::max(eig_.eigenvalues.maxCoeff(), 0.0);
  for (Eigen::Index k = 0; k < eig_.eigenvalues.size(); ++k) {
    if (eig_.eigenvalues(k) > cutoff) ++rank_;
  }
}

Vector EtaInverse::apply(const Vector& v) const {
  const Eigen::Index n = eig_.eigenvalues.size();
  Vector out = Vector::Zero(n);
  for (Eigen::Index k = n - rank_; k < n; ++k) {
    const Complex c = eig_.eigenvectors.col(k).dot(v) / eig_.eigenvalues(k);
    out += c * eig_.eigenvectors.col(k);
  }
  return out;
}

double EtaInverse::projector_residual(const Vector& v) const {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  const Eigen::Index n = eig_.eigenvalues.size();
  Vector proj = Vector::Zero(n);
  for (Eigen::Index k = n - rank_; k < n; ++k) {
    proj += eig_.eigenvectors.col(k).dot(v) * eig_.eigenvectors.col(k);
  }
  return (v - proj).norm() / norm;
}

FisherResult qfim_vectorized(const DensityMatrix& rho, const TangentSet& tangents) {
  const int m = static_cast<int>(tangents.derivatives.size());
  EtaInverse inv(rho);

  FisherResult out;
  out.fisher = Eigen::MatrixXd::Zero(m, m);
  out.unbounded.assign(m, false);
  out.support_rank = inv.support_rank();

  std::vector<Vector> vecs(m), inv_vecs(m);
  for (int i = 0; i < m; ++i) {
    vecs[i] = vectorize(tangents.derivatives[i]);
    out.unbounded[i] = inv.projector_residual(vecs[i]) > support_leak_tol;
    inv_vecs[i] = inv.apply(vecs[i]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // Conjugate transpose on the left; coincides with the plain
      // transpose for real-entried tangents and keeps F real symmetric
      // for complex ones.
      const double f = 2.0 * std::real(vecs[i].dot(inv_vecs[j]));
      out.fisher(i, j) = f;
      out.fisher(j, i) = f;
    }
  }
  return out;
}

Eigen::MatrixXd qfim_spectral(const DensityMatrix& rho, const TangentSet& tangents) {
  const int m = static_cast<int>(tangents.derivatives.size());
  const EighResult e = eigh(rho.matrix());
  const double cutoff = tol::pinv_rel * std::max(1.0, e.eigenvalues.maxCoeff());

  // <k| d_u rho |l> for every tangent and eigenpair.
  std::vector<Matrix4> elems(m);
  for (int u = 0; u < m; ++u) {
    elems[u] = e.eigenvectors.adjoint() * tangents.derivatives[u] * e.eigenvectors;
  }

  Eigen::MatrixXd fisher = Eigen::MatrixXd::Zero(m, m);
  for (int u = 0; u < m; ++u) {
    for (int v = u; v < m; ++v) {
      Complex sum = 0.0;
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          const double denom = e.eigenvalues(k) + e.eigenvalues(l);
          if (denom > cutoff) {
            sum += elems[u](k, l) * elems[v](l, k) / denom;
          }
        }
      }
      fisher(u, v) = 2.0 * std::real(sum);
      fisher(v, u) = fisher(u, v);
    }
  }
  return fisher;
}

Matrix4 sld(const EtaInverse& inv, const Matrix4& tangent) {
  const Vector v = 2.0 * inv.apply(vectorize(tangent));
  const Matrix l = unvectorize(v, 4);
  // Symmetrize away the rounding noise; the exact result is Hermitian.
  return (l + l.adjoint()) / 2.0;
}

Matrix4 sld(const DensityMatrix& rho, const Matrix4& tangent) {
  return sld(EtaInverse(rho), tangent);
}

Compatibility compatibility(const DensityMatrix& rho, const std::vector<Matrix4>& slds) {
  const int m = static_cast<int>(slds.size());
  Compatibility out;
  out.weak_commutativity = Eigen::MatrixXd::Zero(m, m);
  out.commutator_norms = Eigen::MatrixXd::Zero(m, m);
  out.shared_eigenbasis = true;
  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < m; ++v) {
      if (u == v) continue;
      out.weak_commutativity(u, v) = std::imag((rho.matrix() * slds[u] * slds[v]).trace());
      const Matrix4 comm = slds[u] * slds[v] - slds[v] * slds[u];
      out.commutator_norms(u, v) = comm.norm();
      const double scale = std::max(1.0, slds[u].norm() * slds[v].norm());
      if (out.commutator_norms(u, v) > 1e-8 * scale) out.shared_eigenbasis = false;
    }
  }
  return out;
}

QfimReport qfim_report(const DensityMatrix& rho, const TangentSet& tangents) {
  QfimReport report;
  report.axes = tangents.axes;
  EtaInverse inv(rho);

  const int m = static_cast<int>(tangents.derivatives.size());
  report.fisher.fisher = Eigen::MatrixXd::Zero(m, m);
  report.fisher.unbounded.assign(m, false);
  report.fisher.support_rank = inv.support_rank();
  report.slds.reserve(m);

  std::vector<Vector> vecs(m), inv_vecs(m);
  for (int i = 0; i < m; ++i) {
    vecs[i] = vectorize(tangents.derivatives[i]);
    report.fisher.unbounded[i] = inv.projector_residual(vecs[i]) > support_leak_tol;
    inv_vecs[i] = inv.apply(vecs[i]);
    const Matrix l = unvectorize(2.0 * inv_vecs[i], 4);
    report.slds.push_back((l + l.adjoint()) / 2.0);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double f = 2.0 * std::real(vecs[i].dot(inv_vecs[j]));
      report.fisher.fisher(i, j) = f;
      report.fisher.fisher(j, i) = f;
    }
  }
  report.compat = compatibility(rho, report.slds);
  return report;
}

}  // namespace udwqfim
