#include "udwqfim/model.hpp"

#include <cmath>

namespace udwqfim {

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::T: return "T";
    case Axis::Delta0: return "delta0";
    case Axis::Omega: return "omega";
  }
  return "?";
}

std::string axis_short_name(Axis a) {
  switch (a) {
    case Axis::T: return "T";
    case Axis::Delta0: return "D";
    case Axis::Omega: return "w";
  }
  return "?";
}

Axis axis_from_name(const std::string& name) {
  if (name == "T") return Axis::T;
  if (name == "delta0" || name == "D") return Axis::Delta0;
  if (name == "omega" || name == "w") return Axis::Omega;
  throw DomainError("unknown parameter axis '" + name + "'");
}

double thermal_parameter(double temperature, double omega) {
  if (!(temperature > 0.0)) throw DomainError("thermal_parameter: T must be positive");
  if (!(omega > 0.0)) throw DomainError("thermal_parameter: omega must be positive");
  return std::tanh(omega / (2.0 * temperature));
}

ModelPoint::ModelPoint(double temperature, double level_spacing, double initial_delta)
    : T(temperature), omega(level_spacing), delta0(initial_delta),
      eta(thermal_parameter(temperature, level_spacing)) {
  if (delta0 < -3.0 || delta0 > 1.0) {
    throw DomainError("ModelPoint: delta0 must lie in [-3, 1]");
  }
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4& m) {
  if (!is_hermitian(m)) {
    throw ContractError("DensityMatrix: matrix is not Hermitian");
  }
  DensityMatrix rho(m);
  if (std::abs(rho.trace_residual()) > tol::atol) {
    throw ContractError("DensityMatrix: trace deviates from 1");
  }
  if (rho.min_eigenvalue() < -1e-10) {
    throw ContractError("DensityMatrix: matrix is not positive semidefinite");
  }
  return rho;
}

double DensityMatrix::trace_residual() const {
  return std::abs(m_.trace() - Complex(1.0, 0.0));
}

double DensityMatrix::min_eigenvalue() const {
  return eigh(m_).eigenvalues.minCoeff();
}

bool DensityMatrix::is_x_structured(double atol) const {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool x_slot = (i == j) || (i == 1 && j == 2) || (i == 2 && j == 1);
      if (!x_slot && std::abs(m_(i, j)) > atol) return false;
    }
  }
  return true;
}

namespace {

struct XSlots {
  double ee, mid, gg, coh;
};

Matrix4 x_matrix(const XSlots& s) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = s.ee;
  m(1, 1) = s.mid;
  m(2, 2) = s.mid;
  m(3, 3) = s.gg;
  m(1, 2) = s.coh;
  m(2, 1) = s.coh;
  return m;
}

XSlots stationary_slots(double eta, double delta0) {
  const double g = 3.0 + eta * eta;
  XSlots s;
  s.ee = (3.0 + delta0) * (eta - 1.0) * (eta - 1.0) / (4.0 * g);
  s.mid = (3.0 - delta0 - (delta0 + 1.0) * eta * eta) / (4.0 * g);
  s.gg = (3.0 + delta0) * (eta + 1.0) * (eta + 1.0) / (4.0 * g);
  s.coh = (delta0 - eta * eta) / (2.0 * g);
  return s;
}

// Closed-form derivatives of the slot elements with respect to eta and
// delta0; the T and omega derivatives follow by the chain rule.
XSlots slots_d_delta0(double eta) {
  const double g = 3.0 + eta * eta;
  return {(eta - 1.0) * (eta - 1.0) / (4.0 * g), -(1.0 + eta * eta) / (4.0 * g),
          (eta + 1.0) * (eta + 1.0) / (4.0 * g), 1.0 / (2.0 * g)};
}

XSlots slots_d_eta(double eta, double delta0) {
  const double g = 3.0 + eta * eta;
  const double g2 = g * g;
  XSlots s;
  s.ee = (3.0 + delta0) * (eta - 1.0) * (3.0 + eta) / (2.0 * g2);
  s.mid = -eta * (3.0 + delta0) / g2;
  s.gg = (3.0 + delta0) * (eta + 1.0) * (3.0 - eta) / (2.0 * g2);
  s.coh = s.mid;
  return s;
}

double deta(const ModelPoint& p, Axis axis) {
  const double sech2 = 1.0 - p.eta * p.eta;
  switch (axis) {
    case Axis::T: return -sech2 * p.omega / (2.0 * p.T * p.T);
    case Axis::Omega: return sech2 / (2.0 * p.T);
    case Axis::Delta0: return 0.0;
  }
  return 0.0;
}

}  // namespace

DensityMatrix stationary_state(const ModelPoint& p) {
  return DensityMatrix::from_matrix(x_matrix(stationary_slots(p.eta, p.delta0)));
}

Matrix4 stationary_state_unnormalized_variant(const ModelPoint& p) {
  XSlots s = stationary_slots(p.eta, p.delta0);
  std::swap(s.mid, s.gg);
  return x_matrix(s);
}

Matrix4 state_derivative(const ModelPoint& p, Axis axis, DerivativeMethod method,
                         double h) {
  if (method == DerivativeMethod::Analytic) {
    if (axis == Axis::Delta0) return x_matrix(slots_d_delta0(p.eta));
    const XSlots se = slots_d_eta(p.eta, p.delta0);
    const double c = deta(p, axis);
    return x_matrix({c * se.ee, c * se.mid, c * se.gg, c * se.coh});
  }

  const double lambda = axis == Axis::T ? p.T : axis == Axis::Omega ? p.omega : p.delta0;
  const double step = h * std::max(1.0, std::abs(lambda));
  auto shifted = [&](double sign) {
    switch (axis) {
      case Axis::T: return ModelPoint(p.T + sign * step, p.omega, p.delta0);
      case Axis::Omega: return ModelPoint(p.T, p.omega + sign * step, p.delta0);
      default: return ModelPoint(p.T, p.omega, p.delta0 + sign * step);
    }
  };
  // ModelPoint construction throws DomainError when the step leaves the
  // parameter domain, which is the contract for boundary points.
  const Matrix4 plus = stationary_state(shifted(+1.0)).matrix();
  const Matrix4 minus = stationary_state(shifted(-1.0)).matrix();
  return (plus - minus) / (2.0 * step);
}

double delta0_of_initial_state(const DensityMatrix& rho) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Matrix2 s = pauli(i);
    sum += std::real((kron(s, s) * rho.matrix()).trace());
  }
  return sum;
}

TangentSet tangent_set(const ModelPoint& p, const std::vector<Axis>& axes,
                       DerivativeMethod method) {
  TangentSet out;
  out.axes = axes;
  out.derivatives.reserve(axes.size());
  for (Axis a : axes) out.derivatives.push_back(state_derivative(p, a, method));
  return out;
}

Matrix2 pauli(int i) {
  Matrix2 m = Matrix2::Zero();
  switch (i) {
    case 0:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 1:
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 2:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      m = Matrix2::Identity();
  }
  return m;
}

}  // namespace udwqfim
