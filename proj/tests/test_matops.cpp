#include "udwqfim/matops.hpp"

#include "doctest.h"
#include "test_helpers.hpp"
#include "udwqfim/model.hpp"

using namespace udwqfim;
using testing::random_complex;
using testing::random_hermitian;
using testing::random_psd;

TEST_CASE("kron identities and shapes") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(approx_equal(kron(i2, i2), Matrix::Identity(4, 4)));

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a.diagonal() << 1.0, 2.0;
  b.diagonal() << 3.0, 4.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 3.0, 4.0, 6.0, 8.0;
  CHECK(approx_equal(kron(a, b), expected));

  // sigma_z x sigma_z on |01> has eigenvalue -1.
  const Matrix zz = kron(pauli(2), pauli(2));
  Vector e01 = Vector::Zero(4);
  e01(1) = 1.0;
  CHECK((zz * e01 + e01).norm() == doctest::Approx(0.0));

  std::mt19937 rng(1);
  const Matrix r = random_complex(2, 3, rng);
  const Matrix s = random_complex(4, 5, rng);
  CHECK(kron(r, s).rows() == 8);
  CHECK(kron(r, s).cols() == 15);
}

TEST_CASE("kron associativity") {
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    const Matrix a = random_complex(2, 2, rng);
    const Matrix b = random_complex(3, 2, rng);
    const Matrix c = random_complex(2, 3, rng);
    CHECK(approx_equal(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-12, 1e-12));
  }
}

TEST_CASE("vectorize column stacking") {
  Matrix x(2, 2);
  x << 1.0, 2.0, 3.0, 4.0;
  Vector v = vectorize(x);
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(v(3) == Complex(4.0));

  Vector vi = vectorize(Matrix::Identity(2, 2));
  CHECK(vi(0) == Complex(1.0));
  CHECK(vi(1) == Complex(0.0));
  CHECK(vi(2) == Complex(0.0));
  CHECK(vi(3) == Complex(1.0));
}

TEST_CASE("vectorization superoperator identities") {
  std::mt19937 rng(4);
  for (int i = 0; i < 5; ++i) {
    const Matrix a = random_complex(2, 2, rng);
    const Matrix x = random_complex(2, 2, rng);
    const Matrix b = random_complex(2, 2, rng);
    CHECK(approx_equal(Matrix(vectorize(a * x * b)),
                       Matrix(kron(b.transpose(), a) * vectorize(x)), 1e-12, 1e-12));
  }
  for (int i = 0; i < 5; ++i) {
    const Matrix x = random_complex(4, 4, rng);
    const Matrix y = random_complex(4, 4, rng);
    const Matrix id = Matrix::Identity(4, 4);
    CHECK(approx_equal(Matrix(vectorize(x * y)),
                       Matrix(kron(id, x) * vectorize(y)), 1e-12, 1e-12));
    CHECK(approx_equal(Matrix(vectorize(x * y)),
                       Matrix(kron(y.transpose(), id) * vectorize(x)), 1e-12, 1e-12));
    // Tr(X^dag Y) = vec(X)^dag vec(Y)
    const Complex lhs = (x.adjoint() * y).trace();
    const Complex rhs = vectorize(x).dot(vectorize(y));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("unvectorize inverts vectorize") {
  Matrix x(2, 2);
  x << 1.0, 2.0, 3.0, 4.0;
  Vector v(4);
  v << 1.0, 3.0, 2.0, 4.0;
  CHECK(approx_equal(unvectorize(v, 2), x));

  std::mt19937 rng(5);
  const Matrix r = random_complex(4, 4, rng);
  CHECK(approx_equal(unvectorize(vectorize(r), 4), r));

  CHECK_THROWS_AS(unvectorize(Vector::Zero(15), 4), ShapeError);
}

TEST_CASE("eigh basics") {
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 3.0, 1.0, 2.0, 0.0;
  const EighResult e = eigh(d);
  CHECK(e.eigenvalues(0) == doctest::Approx(0.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(2) == doctest::Approx(2.0));
  CHECK(e.eigenvalues(3) == doctest::Approx(3.0));

  const EighResult ex = eigh(pauli(0));
  CHECK(ex.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(ex.eigenvalues(1) == doctest::Approx(1.0));

  std::mt19937 rng(6);
  const Matrix h = random_hermitian(4, rng);
  const EighResult eh = eigh(h);
  Matrix rebuilt = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    rebuilt += eh.eigenvalues(k) * eh.eigenvectors.col(k) * eh.eigenvectors.col(k).adjoint();
  }
  CHECK(approx_equal(rebuilt, h, 1e-12, 1e-10));
  CHECK(approx_equal(Matrix(eh.eigenvectors.adjoint() * eh.eigenvectors),
                     Matrix::Identity(4, 4), 1e-10, 1e-10));

  Matrix bad = random_complex(3, 3, rng);
  bad(0, 1) += 1.0;
  CHECK_THROWS_AS(eigh(bad), ContractError);
}

TEST_CASE("eigh of PSD matrices stays nonnegative") {
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    const Matrix p = random_psd(4, 3, rng);
    const EighResult e = eigh(p);
    CHECK(e.eigenvalues.minCoeff() >= -1e-10 * e.eigenvalues.maxCoeff());
  }
}

TEST_CASE("pinv_psd") {
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 2.0, 0.0, 4.0, 0.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 0.5, 0.0, 0.25, 0.0;
  CHECK(approx_equal(pinv_psd(d), expected));

  CHECK(approx_equal(pinv_psd(Matrix::Identity(16, 16)), Matrix::Identity(16, 16)));

  std::mt19937 rng(8);
  const Matrix h = random_psd(4, 3, rng);
  const Matrix hp = pinv_psd(h);
  CHECK(approx_equal(Matrix(h * hp * h), h, 1e-10, 1e-10));
  CHECK(approx_equal(Matrix(hp * h * hp), hp, 1e-10, 1e-10));

  Matrix negative = Matrix::Identity(3, 3);
  negative(2, 2) = -0.5;
  CHECK_THROWS_AS(pinv_psd(negative), ContractError);
}
