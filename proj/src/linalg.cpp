// SPDX-License-Identifier: Apache-2.0

#include "beast/linalg.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include "beast/errors.hpp"

namespace beast
{

bool is_real(const Matrix &M)
{
  return (M.imag().array() == 0.0).all();
}

namespace
{

void check_hermitian(const Matrix &M, const char *name)
{
  if (M.rows() != M.cols())
  {
    throw ShapeError(std::string(name) + " must be square");
  }
  if (M.rows() == 0)
  {
    throw ShapeError(std::string(name) + " must be nonempty");
  }
  if (!M.allFinite())
  {
    throw std::invalid_argument(std::string(name) + " has non-finite entries");
  }
  const double scale = M.norm();
  if ((M - M.adjoint()).norm() > 1e-12 * scale)
  {
    throw SymmetryError(std::string(name) + " is not Hermitian");
  }
}

}  // namespace

HermitianPencil::HermitianPencil(Matrix A)
  : HermitianPencil(A, Matrix::Identity(A.rows(), A.cols()))
{
}

HermitianPencil::HermitianPencil(Matrix A, Matrix B)
{
  check_hermitian(A, "A");
  check_hermitian(B, "B");
  if (A.rows() != B.rows())
  {
    throw ShapeError("A and B have different dimensions");
  }
  b_identity_ = B.isIdentity(0.0);
  if (!b_identity_ && Eigen::LLT<Matrix>(B).info() != Eigen::Success)
  {
    throw IndefiniteB("B is not positive definite");
  }
  real_ = beast::is_real(A) && beast::is_real(B);
  a_ = std::make_shared<const Matrix>(std::move(A));
  b_ = std::make_shared<const Matrix>(std::move(B));
}

Matrix HermitianPencil::apply_b(const Matrix &Y) const
{
  if (b_identity_)
  {
    return Y;
  }
  return (*b_) * Y;
}

ShiftedFactor::ShiftedFactor(const HermitianPencil &pencil, std::complex<double> z)
  : pencil_(pencil), z_(z)
{
  Matrix M = -pencil.A();
  if (pencil.b_identity())
  {
    M.diagonal().array() += z;
  }
  else
  {
    M += z * pencil.B();
  }
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  lu_.compute(M);
  const double pivot = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (pivot <= static_cast<double>(M.rows()) * std::numeric_limits<double>::epsilon() * norm)
  {
    throw SingularShift("shifted matrix is singular at z = (" + std::to_string(z.real()) +
                        ", " + std::to_string(z.imag()) + ")");
  }
}

Matrix ShiftedFactor::solve(const Matrix &Y) const
{
  return lu_.solve(pencil_.apply_b(Y));
}

ShiftedFactor factor_shifted(const HermitianPencil &pencil, std::complex<double> z)
{
  return ShiftedFactor(pencil, z);
}

Matrix solve_shifted(const ShiftedFactor &factor, const Matrix &Y)
{
  return factor.solve(Y);
}

SvdResult svd_with_values(const Matrix &U)
{
  if (U.size() == 0)
  {
    throw std::invalid_argument("SVD of an empty block");
  }
  SvdResult out;
  if (is_real(U))
  {
    Eigen::BDCSVD<RealMatrix> svd(U.real(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.left = svd.matrixU().cast<std::complex<double>>();
    out.values = svd.singularValues();
    out.right = svd.matrixV().cast<std::complex<double>>();
  }
  else
  {
    Eigen::BDCSVD<Matrix> svd(U, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.left = svd.matrixU();
    out.values = svd.singularValues();
    out.right = svd.matrixV();
  }
  return out;
}

namespace
{

template <typename Mat>
HermitianEig dense_eig(const Mat &A, const Mat &B, bool b_identity)
{
  HermitianEig out;
  if (b_identity)
  {
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.info() != Eigen::Success)
    {
      throw Error("Hermitian eigensolver failed to converge");
    }
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().template cast<std::complex<double>>();
    return out;
  }
  if (Eigen::LLT<Mat>(B).info() != Eigen::Success)
  {
    throw IndefiniteB("B is not positive definite");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(A, B, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
  {
    throw Error("generalized Hermitian eigensolver failed to converge");
  }
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors().template cast<std::complex<double>>();
  return out;
}

}  // namespace

HermitianEig hermitian_definite_eig(const HermitianPencil &pencil)
{
  if (pencil.is_real())
  {
    return dense_eig<RealMatrix>(pencil.A().real(), pencil.B().real(), pencil.b_identity());
  }
  return dense_eig<Matrix>(pencil.A(), pencil.B(), pencil.b_identity());
}

}  // namespace beast
