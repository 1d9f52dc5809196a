// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <memory>
#include <Eigen/Dense>

namespace beast
{

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// True when every entry has an exactly zero imaginary part.
bool is_real(const Matrix &M);

// Hermitian A with Hermitian positive definite B. Matrices are shared between copies.
class HermitianPencil
{
public:
  // Standard problem, B = I.
  explicit HermitianPencil(Matrix A);
  HermitianPencil(Matrix A, Matrix B);

  const Matrix &A() const { return *a_; }
  const Matrix &B() const { return *b_; }
  Eigen::Index n() const { return a_->rows(); }
  bool b_identity() const { return b_identity_; }
  bool is_real() const { return real_; }

  // Y -> B Y without a multiply when B = I.
  Matrix apply_b(const Matrix &Y) const;

private:
  std::shared_ptr<const Matrix> a_, b_;
  bool b_identity_ = false;
  bool real_ = false;
};

// LU factorization of z B - A, immutable once built.
class ShiftedFactor
{
public:
  ShiftedFactor(const HermitianPencil &pencil, std::complex<double> z);

  std::complex<double> shift() const { return z_; }
  Eigen::Index n() const { return lu_.rows(); }

  // Solves (z B - A) X = B Y.
  Matrix solve(const Matrix &Y) const;

private:
  HermitianPencil pencil_;
  std::complex<double> z_;
  Eigen::PartialPivLU<Matrix> lu_;
};

ShiftedFactor factor_shifted(const HermitianPencil &pencil, std::complex<double> z);
Matrix solve_shifted(const ShiftedFactor &factor, const Matrix &Y);

struct SvdResult
{
  Matrix left;         // n x min(n, p), orthonormal columns
  RealVector values;   // descending
  Matrix right;        // p x min(n, p)
};

SvdResult svd_with_values(const Matrix &U);

struct HermitianEig
{
  RealVector values;  // ascending
  Matrix vectors;     // B-orthonormal columns
};

HermitianEig hermitian_definite_eig(const HermitianPencil &pencil);

}  // namespace beast
