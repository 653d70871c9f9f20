#include "udwqfim/model.hpp"

#include <cmath>

#include "doctest.h"

using namespace udwqfim;

TEST_CASE("thermal parameter") {
  CHECK(thermal_parameter(1.0, 1.0) == doctest::Approx(0.4621171572600098).epsilon(1e-12));
  CHECK(thermal_parameter(1e9, 1.0) == doctest::Approx(5e-10).epsilon(1e-3));
  CHECK(thermal_parameter(0.1, 1.0) == doctest::Approx(std::tanh(5.0)).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_parameter(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(thermal_parameter(1.0, -2.0), DomainError);
}

TEST_CASE("model point validation") {
  CHECK_THROWS_AS(ModelPoint(1.0, 1.0, 1.5), DomainError);
  CHECK_THROWS_AS(ModelPoint(1.0, 1.0, -3.1), DomainError);
  const ModelPoint p(1.0, 1.0, -2.0);
  CHECK(p.eta == doctest::Approx(std::tanh(0.5)));
}

TEST_CASE("stationary state elements") {
  // coherence vanishes when delta0 = eta^2
  {
    const double eta = thermal_parameter(0.7, 1.3);
    const ModelPoint p(0.7, 1.3, eta * eta);
    CHECK(std::abs(stationary_state(p).coh()) <= 1e-14);
  }
  // high-temperature limit: maximally mixed at delta0 = 0
  {
    const ModelPoint p(1e9, 1.0, 0.0);
    const DensityMatrix rho = stationary_state(p);
    CHECK(approx_equal(rho.matrix(), Matrix4::Identity() / 4.0, 1e-9, 1e-9));
  }
  // generic interior point: unit trace, PSD
  {
    const ModelPoint p(1.0, 1.0, -2.0);
    const DensityMatrix rho = stationary_state(p);
    CHECK(rho.trace_residual() <= 1e-14);
    CHECK(rho.min_eigenvalue() >= 0.0);
    CHECK(rho.is_x_structured());
  }
}

TEST_CASE("stationary state across the domain grid") {
  for (double D = -3.0; D <= 1.0 + 1e-9; D += 0.5) {
    for (double T : {0.05, 0.5, 2.0, 10.0}) {
      for (double w : {0.1, 1.0, 3.0}) {
        const DensityMatrix rho = stationary_state(ModelPoint(T, w, D));
        CHECK(rho.trace_residual() <= 1e-13);
        CHECK(rho.min_eigenvalue() >= -1e-12);
        // singlet population is conserved at (1 - delta0)/4
        Eigen::Vector4cd a = Eigen::Vector4cd::Zero();
        a(1) = 1.0 / std::sqrt(2.0);
        a(2) = -1.0 / std::sqrt(2.0);
        const double pop = std::real(a.dot(rho.matrix() * a));
        CHECK(pop == doctest::Approx((1.0 - D) / 4.0).epsilon(1e-12));
        // the Bloch invariant returns delta0 itself
        CHECK(delta0_of_initial_state(rho) == doctest::Approx(D).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("slot-swapped variant is not normalized") {
  const ModelPoint p(1e9, 1.0, 0.6);
  const Matrix4 m = stationary_state_unnormalized_variant(p);
  // trace (12 + 2*delta0)/12 at eta -> 0
  CHECK(std::real(m.trace()) == doctest::Approx((12.0 + 2.0 * 0.6) / 12.0).epsilon(1e-6));
}

TEST_CASE("state derivatives") {
  const ModelPoint p(0.7, 1.2, -1.5);
  for (Axis a : {Axis::T, Axis::Delta0, Axis::Omega}) {
    const Matrix4 analytic = state_derivative(p, a);
    CHECK(is_hermitian(analytic));
    CHECK(std::abs(analytic.trace()) <= 1e-10);
    const Matrix4 fd = state_derivative(p, a, DerivativeMethod::CentralDifference);
    CHECK(max_abs(analytic - fd) <= 1e-6 * std::max(1.0, max_abs(analytic)));
  }

  // d/d delta0 of the excited-excited population
  const double eta = p.eta;
  const double expected = (eta - 1.0) * (eta - 1.0) / (4.0 * (3.0 + eta * eta));
  CHECK(std::real(state_derivative(p, Axis::Delta0)(0, 0)) ==
        doctest::Approx(expected).epsilon(1e-12));

  // eta saturates at high temperature: T-derivative vanishes
  const Matrix4 dT = state_derivative(ModelPoint(1e9, 1.0, 0.3), Axis::T);
  CHECK(max_abs(dT) <= 1e-18);

  // finite-difference step crossing the domain boundary
  CHECK_THROWS_AS(state_derivative(ModelPoint(1.0, 1.0, 0.9999999), Axis::Delta0,
                                   DerivativeMethod::CentralDifference),
                  DomainError);
}

TEST_CASE("delta0 of known states") {
  Matrix4 singlet = Matrix4::Zero();
  singlet(1, 1) = 0.5;
  singlet(2, 2) = 0.5;
  singlet(1, 2) = -0.5;
  singlet(2, 1) = -0.5;
  CHECK(delta0_of_initial_state(DensityMatrix::from_matrix(singlet)) ==
        doctest::Approx(-3.0));

  CHECK(delta0_of_initial_state(DensityMatrix::from_matrix(Matrix4::Identity() / 4.0)) ==
        doctest::Approx(0.0));

  Matrix4 triplet = singlet;
  triplet(1, 2) = 0.5;
  triplet(2, 1) = 0.5;
  CHECK(delta0_of_initial_state(DensityMatrix::from_matrix(triplet)) ==
        doctest::Approx(1.0));
}

TEST_CASE("density matrix validation") {
  Matrix4 bad = Matrix4::Identity() / 4.0;
  bad(0, 1) = Complex(0.2, 0.1);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), ContractError);

  Matrix4 not_normalized = Matrix4::Identity();
  CHECK_THROWS_AS(DensityMatrix::from_matrix(not_normalized), ContractError);

  Matrix4 negative = Matrix4::Zero();
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(negative), ContractError);
}
