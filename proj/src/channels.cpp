#include "udwqfim/channels.hpp"

#include <cmath>

namespace udwqfim {

MemoryKernelSpec::MemoryKernelSpec(double kernel_tau, double correlation_mu)
    : tau(kernel_tau), mu(correlation_mu) {
  if (!(tau > 0.0)) throw DomainError("MemoryKernelSpec: tau must be positive");
  if (mu < 0.0 || mu > 1.0) throw DomainError("MemoryKernelSpec: mu must lie in [0,1]");
}

double MemoryKernelSpec::beta() const {
  const double a = alpha();
  return std::sqrt(std::abs(4.0 - a * a));
}

double memory_kernel(double t, const MemoryKernelSpec& spec) {
  if (t < 0.0) throw DomainError("memory_kernel: t must be nonnegative");
  const double a = spec.alpha();
  const double b = spec.beta();
  const double damp = std::exp(-a * t);
  if (b < 1e-6) {
    // Removable singularity at the regime boundary 4*tau = 1.
    return damp * (1.0 + a * t);
  }
  if (spec.non_markovian()) {
    return damp * (std::cos(b * t) + (a / b) * std::sin(b * t));
  }
  return damp * (std::cosh(b * t) + (a / b) * std::sinh(b * t));
}

double kappa(double t, const MemoryKernelSpec& spec) {
  const double f = memory_kernel(t, spec);
  return f * f + (1.0 - f * f) * spec.mu;
}

Matrix4 dephasing_map(const Matrix4& m, double kappa_value) {
  if (kappa_value < 0.0 || kappa_value > 1.0) {
    throw DomainError("dephasing: kappa must lie in [0,1]");
  }
  Matrix4 out = m;
  out(1, 2) *= kappa_value;
  out(2, 1) *= kappa_value;
  return out;
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, double kappa_value) {
  return DensityMatrix::from_matrix(dephasing_map(rho.matrix(), kappa_value));
}

double KrausFamily::closure_residual() const {
  Matrix2 sum = Matrix2::Zero();
  for (const Matrix2& k : ops) sum += k.adjoint() * k;
  return max_abs(sum - Matrix2::Identity());
}

namespace {

void check_strength(double s, const char* name) {
  if (s < 0.0 || s > 1.0) {
    throw DomainError(std::string(name) + ": strength must lie in [0,1]");
  }
}

}  // namespace

KrausFamily kraus_ad(double s) {
  check_strength(s, "kraus_ad");
  Matrix2 k1 = Matrix2::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - s);
  Matrix2 k2 = Matrix2::Zero();
  k2(0, 1) = std::sqrt(s);
  return {{k1, k2}, "AD", s};
}

KrausFamily kraus_pf(double s) {
  check_strength(s, "kraus_pf");
  Matrix2 k1 = std::sqrt(s) * Matrix2::Identity();
  Matrix2 k2 = Matrix2::Zero();
  k2(0, 0) = std::sqrt(1.0 - s);
  k2(1, 1) = -std::sqrt(1.0 - s);
  return {{k1, k2}, "PF", s};
}

KrausFamily kraus_pd(double s) {
  check_strength(s, "kraus_pd");
  Matrix2 k1 = Matrix2::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - s);
  Matrix2 k2 = Matrix2::Zero();
  k2(1, 1) = std::sqrt(s);
  return {{k1, k2}, "PD", s};
}

Matrix4 local_product_map(const Matrix4& m, const KrausFamily& fam) {
  if (fam.closure_residual() > tol::atol) {
    throw ContractError("local_product_map: Kraus family violates closure");
  }
  Matrix4 out = Matrix4::Zero();
  for (const Matrix2& ka : fam.ops) {
    for (const Matrix2& kb : fam.ops) {
      const Matrix4 k = kron(ka, kb);
      out.noalias() += k * m * k.adjoint();
    }
  }
  return out;
}

DensityMatrix apply_local_product(const DensityMatrix& rho, const KrausFamily& fam) {
  return DensityMatrix::from_matrix(local_product_map(rho.matrix(), fam));
}

CorrelatedPauliSpec::CorrelatedPauliSpec(const std::array<double, 4>& probabilities,
                                         double correlation_mu)
    : p(probabilities), mu(correlation_mu) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw DomainError("CorrelatedPauliSpec: probabilities must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw DomainError("CorrelatedPauliSpec: probabilities must sum to 1");
  }
  if (mu < 0.0 || mu > 1.0) throw DomainError("CorrelatedPauliSpec: mu must lie in [0,1]");
}

double CorrelatedPauliSpec::joint_probability(int m, int n) const {
  return (1.0 - mu) * p[m] * p[n] + (m == n ? mu * p[m] : 0.0);
}

Matrix4 correlated_pauli_map(const Matrix4& m, const CorrelatedPauliSpec& spec) {
  // sigma_0 = I, sigma_1..3 = Pauli x/y/z.
  std::array<Matrix2, 4> sig = {Matrix2::Identity(), pauli(0), pauli(1), pauli(2)};
  Matrix4 out = Matrix4::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double w = spec.joint_probability(a, b);
      if (w == 0.0) continue;
      const Matrix4 k = kron(sig[a], sig[b]);
      out.noalias() += w * (k * m * k.adjoint());
    }
  }
  return out;
}

DensityMatrix apply_correlated_pauli(const DensityMatrix& rho,
                                     const CorrelatedPauliSpec& spec) {
  return DensityMatrix::from_matrix(correlated_pauli_map(rho.matrix(), spec));
}

double strength_from_time(double v, double t) {
  if (v < 0.0 || t < 0.0) throw DomainError("strength_from_time: v and t must be nonnegative");
  return 1.0 - std::exp(-v * t);
}

}  // namespace udwqfim
