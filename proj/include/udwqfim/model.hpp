#ifndef UDWQFIM_MODEL_HPP
#define UDWQFIM_MODEL_HPP

#include <string>
#include <vector>

#include "udwqfim/matops.hpp"

// Stationary state of the two accelerated detectors and its parameter
// derivatives. The state is an X-matrix in the computational basis
// |00>,|01>,|10>,|11>, fully determined by the thermal parameter
// eta = tanh(omega/(2T)) and the initial-state parameter delta0.

namespace udwqfim {

using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;

enum class Axis { T, Delta0, Omega };

std::string axis_name(Axis a);        // "T", "delta0", "omega"
std::string axis_short_name(Axis a);  // "T", "D", "w" (column labels)
Axis axis_from_name(const std::string& name);

// eta = tanh(omega/(2T)), in (0,1) for finite positive T and omega.
double thermal_parameter(double temperature, double omega);

struct ModelPoint {
  double T;       // Unruh temperature, > 0
  double omega;   // detector level spacing, > 0
  double delta0;  // initial-state parameter, in [-3, 1]
  double eta;     // tanh(omega/(2T)), derived

  ModelPoint(double temperature, double level_spacing, double initial_delta);
};

// A 4x4 density operator: Hermitian, unit trace, PSD within tolerance.
// Construction validates; instances are immutable values.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix4& m);

  const Matrix4& matrix() const { return m_; }

  // X-state slot accessors (basis |00>,|01>,|10>,|11>).
  Complex corner_ee() const { return m_(0, 0); }  // excited-excited population
  Complex mid() const { return m_(1, 1); }        // the two middle populations
  Complex corner_gg() const { return m_(3, 3); }  // ground-ground population
  Complex coh() const { return m_(1, 2); }        // anti-diagonal coherence

  double trace_residual() const;
  double min_eigenvalue() const;
  // True when every entry off the main diagonal and the (1,2)/(2,1)
  // anti-diagonal slots is zero within tolerance.
  bool is_x_structured(double atol = tol::atol) const;

 private:
  explicit DensityMatrix(const Matrix4& m) : m_(m) {}
  Matrix4 m_;
};

// Stationary state of the detector pair at a model point.
DensityMatrix stationary_state(const ModelPoint& p);

// The same matrix with the two lower population slots swapped, matching a
// published variant of the element layout. It is not trace-normalized and
// is provided only as a diagnostic; nothing downstream consumes it.
Matrix4 stationary_state_unnormalized_variant(const ModelPoint& p);

enum class DerivativeMethod { Analytic, CentralDifference };

// d rho / d lambda for lambda in {T, delta0, omega}: Hermitian and
// traceless. The analytic branch differentiates the element formulas in
// closed form; the central-difference branch is the oracle, with step
// h scaled by max(1, |lambda|).
Matrix4 state_derivative(const ModelPoint& p, Axis axis,
                         DerivativeMethod method = DerivativeMethod::Analytic,
                         double h = 1e-5);

// Bloch invariant sum_i Tr[rho (sigma_i x sigma_i)], in [-3, 1].
double delta0_of_initial_state(const DensityMatrix& rho);

struct TangentSet {
  std::vector<Axis> axes;
  std::vector<Matrix4> derivatives;
};

TangentSet tangent_set(const ModelPoint& p, const std::vector<Axis>& axes,
                       DerivativeMethod method = DerivativeMethod::Analytic);

// Pauli matrices (sigma_x, sigma_y, sigma_z) and the 2x2 identity.
Matrix2 pauli(int i);

}  // namespace udwqfim

#endif
