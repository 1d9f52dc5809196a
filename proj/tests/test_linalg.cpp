// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "beast/errors.hpp"
#include "beast/linalg.hpp"
#include "test_util.hpp"

using namespace beast;
using testutil::diagonal;
using Complex = std::complex<double>;

TEST_CASE("pencil validation")
{
  CHECK_THROWS_AS(HermitianPencil(Matrix::Zero(2, 3)), ShapeError);
  CHECK_THROWS_AS(HermitianPencil{Matrix(0, 0)}, ShapeError);
  Matrix N = Matrix::Identity(2, 2);
  N(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianPencil{N}, SymmetryError);
  CHECK_THROWS_AS(HermitianPencil(Matrix::Identity(2, 2), diagonal({1.0, -1.0})), IndefiniteB);
  CHECK_THROWS_AS(HermitianPencil(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), ShapeError);

  HermitianPencil p(diagonal({1, 2}));
  CHECK(p.b_identity());
  CHECK(p.is_real());
  HermitianPencil g(testutil::random_hermitian(4, 1), testutil::random_hpd(4, 2));
  CHECK_FALSE(g.b_identity());
  CHECK_FALSE(g.is_real());
}

TEST_CASE("shifted solve on a diagonal pencil")
{
  HermitianPencil p(diagonal({1, 2, 3}));
  const Complex z(0, 1);
  Matrix Y = Matrix::Zero(3, 1);
  Y(1, 0) = 1.0;
  const Matrix X = solve_shifted(factor_shifted(p, z), Y);
  CHECK(std::abs(X(0, 0)) == 0.0);
  CHECK(std::abs(X(2, 0)) == 0.0);
  CHECK(std::abs(X(1, 0) - 1.0 / (z - 2.0)) < 1e-15);
}

TEST_CASE("shift on an eigenvalue is singular")
{
  HermitianPencil p(diagonal({1, 2}));
  CHECK_THROWS_AS(factor_shifted(p, Complex(2.0, 0.0)), SingularShift);
}

TEST_CASE("shifted solve backward error")
{
  {
    HermitianPencil p(testutil::random_hermitian(20, 11));
    const Complex z(0.3, 0.1);
    const Matrix Y = testutil::random_matrix(20, 4, 12);
    const Matrix X = solve_shifted(factor_shifted(p, z), Y);
    const Matrix R = (z * Matrix::Identity(20, 20) - p.A()) * X - Y;
    CHECK(R.norm() / Y.norm() <= 1e-10);
  }
  for (int trial = 0; trial < 50; trial++)
  {
    const Eigen::Index n = 2 + (trial * 13) % 63;
    const bool generalized = trial % 2 == 1;
    HermitianPencil p = generalized ? HermitianPencil(testutil::random_hermitian(n, 100 + trial),
                                                      testutil::random_hpd(n, 200 + trial))
                                    : HermitianPencil(testutil::random_hermitian(n, 100 + trial));
    const Complex z(0.1 * trial - 2.0, 0.05 + 0.01 * trial);
    const Matrix Y = testutil::random_matrix(n, 3, 300 + trial);
    const Matrix X = solve_shifted(factor_shifted(p, z), Y);
    const Matrix R = (z * p.B() - p.A()) * X - p.apply_b(Y);
    for (Eigen::Index j = 0; j < Y.cols(); j++)
    {
      CHECK(R.col(j).norm() <= 1e-10 * p.B().norm() * Y.col(j).norm());
    }
  }
}

TEST_CASE("svd examples")
{
  auto s = svd_with_values(Matrix::Identity(3, 3));
  CHECK((s.values - RealVector::Ones(3)).norm() < 1e-15);

  Matrix D = testutil::random_matrix(6, 3, 5);
  D.col(2) = D.col(0);
  s = svd_with_values(D);
  CHECK(s.values(2) <= 1e-14 * s.values(0));

  Matrix U = Matrix::Zero(2, 2);
  U(0, 0) = 3.0;
  U(1, 1) = 4.0;
  s = svd_with_values(U);
  CHECK(std::abs(s.values(0) - 4.0) < 1e-15);
  CHECK(std::abs(s.values(1) - 3.0) < 1e-15);
}

TEST_CASE("svd reconstruction and orthonormality")
{
  for (bool complex : {false, true})
  {
    const Matrix U = testutil::random_matrix(40, 12, 9, complex);
    const auto s = svd_with_values(U);
    const Matrix rec = s.left * s.values.asDiagonal() * s.right.adjoint();
    CHECK((U - rec).norm() <= 1e-12 * U.norm());
    CHECK((s.left.adjoint() * s.left - Matrix::Identity(12, 12)).norm() < 1e-12);
    for (Eigen::Index i = 1; i < s.values.size(); i++)
    {
      CHECK(s.values(i) <= s.values(i - 1));
    }
  }
}

TEST_CASE("dense eigensolver examples")
{
  std::vector<double> d;
  for (int i = 0; i < 100; i++)
  {
    d.push_back((-299 + 10 * i) / 100.0);
  }
  auto e = hermitian_definite_eig(HermitianPencil(diagonal(d)));
  for (int i = 0; i < 100; i++)
  {
    CHECK(std::abs(e.values(i) - d[i]) < 1e-15);
  }

  e = hermitian_definite_eig(HermitianPencil(Matrix::Identity(5, 5)));
  CHECK((e.values - RealVector::Ones(5)).norm() < 1e-15);

  Matrix A = Matrix::Zero(2, 2);
  A(0, 1) = A(1, 0) = 1.0;
  e = hermitian_definite_eig(HermitianPencil(A));
  CHECK(std::abs(e.values(0) + 1.0) < 1e-15);
  CHECK(std::abs(e.values(1) - 1.0) < 1e-15);
}

TEST_CASE("dense eigensolver on diagonal generalized pencils")
{
  HermitianPencil p(diagonal({3, -1, 8, 2}), diagonal({2, 4, 1, 0.5}));
  const auto e = hermitian_definite_eig(p);
  const std::vector<double> expect = {-0.25, 1.5, 4.0, 8.0};
  for (int i = 0; i < 4; i++)
  {
    CHECK(std::abs(e.values(i) - expect[i]) < 1e-14);
  }
}

TEST_CASE("dense eigensolver residuals and B-orthonormality")
{
  for (bool complex : {false, true})
  {
    const Eigen::Index n = 30;
    HermitianPencil p(testutil::random_hermitian(n, 21, complex),
                      testutil::random_hpd(n, 22, complex));
    const auto e = hermitian_definite_eig(p);
    const double na = p.A().norm(), nb = p.B().norm();
    for (Eigen::Index j = 0; j < n; j++)
    {
      const Vector x = e.vectors.col(j);
      const double res = (p.A() * x - e.values(j) * (p.B() * x)).norm();
      CHECK(res <= 1e-11 * (na + std::abs(e.values(j)) * nb));
    }
    const Matrix G = e.vectors.adjoint() * p.B() * e.vectors;
    CHECK((G - Matrix::Identity(n, n)).norm() < 1e-10);
  }
}
