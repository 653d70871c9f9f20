#ifndef UDWQFIM_CHANNELS_HPP
#define UDWQFIM_CHANNELS_HPP

#include <array>
#include <string>
#include <vector>

#include "udwqfim/model.hpp"

// CPTP maps acting on the 4x4 detector-pair states: the correlated
// random-telegraph dephasing map and the local amplitude-damping /
// phase-flip / phase-damping Kraus families. Every map here is linear,
// so parameter derivatives propagate through a channel by applying the
// same map to the derivative matrices.

namespace udwqfim {

// Random-telegraph dephasing environment. The kernel timescale tau sets
// the regime: non-Markovian (oscillatory kernel) for 4*tau > 1, Markovian
// (monotone kernel) for 4*tau < 1. mu in [0,1] is the degree of classical
// correlation between the two local noises.
struct MemoryKernelSpec {
  double tau;
  double mu;

  MemoryKernelSpec(double kernel_tau, double correlation_mu);

  double alpha() const { return 1.0 / (2.0 * tau); }
  // Kernel frequency sqrt(|4 - alpha^2|); vanishes exactly at the regime
  // boundary 4*tau = 1, where the kernel is evaluated by its limit form.
  double beta() const;
  bool non_markovian() const { return 4.0 * tau > 1.0; }
};

// Random-telegraph correlation kernel F(t): F(0) = 1, |F| <= 1, damped
// oscillations in the non-Markovian regime and monotone decay in the
// Markovian one.
double memory_kernel(double t, const MemoryKernelSpec& spec);

// Effective decoherence factor kappa(t) = F^2 + (1 - F^2) * mu, in [mu, 1].
double kappa(double t, const MemoryKernelSpec& spec);

// Multiply the X-state coherence by kappa, leaving populations unchanged.
DensityMatrix apply_dephasing(const DensityMatrix& rho, double kappa_value);
// Same linear map on an arbitrary matrix (used for tangents).
Matrix4 dephasing_map(const Matrix4& m, double kappa_value);

// Pair of single-qubit Kraus operators applied locally to both detectors.
struct KrausFamily {
  std::vector<Matrix2> ops;
  std::string label;    // "AD", "PF", "PD" or "custom"
  double strength = 0.0;

  // Residual of the closure condition sum K^dag K = I.
  double closure_residual() const;
};

KrausFamily kraus_ad(double s);  // amplitude damping
KrausFamily kraus_pf(double s);  // phase flip
KrausFamily kraus_pd(double s);  // phase damping

// sum_{k,l} (K_k x K_l) m (K_k x K_l)^dag. Throws ContractError when the
// family violates closure.
Matrix4 local_product_map(const Matrix4& m, const KrausFamily& fam);
DensityMatrix apply_local_product(const DensityMatrix& rho, const KrausFamily& fam);

// Correlated two-qubit Pauli noise: joint probabilities
// p_{m,n} = (1-mu) p_m p_n + mu p_m delta_{m,n}.
struct CorrelatedPauliSpec {
  std::array<double, 4> p;  // (p_I, p_x, p_y, p_z), nonnegative, sums to 1
  double mu;

  CorrelatedPauliSpec(const std::array<double, 4>& probabilities, double correlation_mu);
  double joint_probability(int m, int n) const;
};

Matrix4 correlated_pauli_map(const Matrix4& m, const CorrelatedPauliSpec& spec);
DensityMatrix apply_correlated_pauli(const DensityMatrix& rho,
                                     const CorrelatedPauliSpec& spec);

// Channel strength of a decay process observed for a time t: 1 - e^{-v t}.
double strength_from_time(double v, double t);

}  // namespace udwqfim

#endif
