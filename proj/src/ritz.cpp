// SPDX-License-Identifier: Apache-2.0

#include "beast/ritz.hpp"

#include <algorithm>
#include <cmath>
#include "beast/errors.hpp"

namespace beast
{

std::size_t RitzSet::active_count() const
{
  return static_cast<std::size_t>(std::count(locked.begin(), locked.end(), false));
}

std::vector<std::size_t> RitzSet::active_indices() const
{
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); j++)
  {
    if (!locked[j])
    {
      out.push_back(j);
    }
  }
  return out;
}

RitzSet extract(const HermitianPencil &pencil, const Matrix &Q, const Interval &interval,
                double tol)
{
  RitzSet out;
  const Eigen::Index m = Q.cols();
  out.X = Matrix(pencil.n(), m);
  if (m == 0)
  {
    return out;
  }

  const Matrix AQ = pencil.A() * Q;
  Matrix AU = Q.adjoint() * AQ;
  AU = (0.5 * (AU + AU.adjoint())).eval();
  HermitianEig reduced;
  try
  {
    if (pencil.b_identity())
    {
      reduced = hermitian_definite_eig(HermitianPencil(AU));
    }
    else
    {
      Matrix BU = Q.adjoint() * (pencil.B() * Q);
      BU = (0.5 * (BU + BU.adjoint())).eval();
      reduced = hermitian_definite_eig(HermitianPencil(AU, BU));
    }
  }
  catch (const IndefiniteB &)
  {
    throw ReducedIndefinite("projected B is not positive definite");
  }

  out.X = Q * reduced.vectors;
  const Matrix AX = AQ * reduced.vectors;
  const Matrix BX = pencil.apply_b(out.X);
  for (Eigen::Index j = 0; j < m; j++)
  {
    const double lambda = reduced.values(j);
    const double norm = out.X.col(j).norm();
    const double res = (AX.col(j) - BX.col(j) * lambda).norm() / norm;
    out.X.col(j) /= norm;
    out.lambda.push_back(lambda);
    out.residual.push_back(res);
    out.in_interval.push_back(interval.contains(lambda));
    out.converged.push_back(res < tol);
    out.locked.push_back(false);
  }
  return out;
}

std::optional<double> smallest_nonconverged_residual(const RitzSet &ritz, double tol,
                                                     StagnationStatistic stat)
{
  std::optional<double> out;
  for (std::size_t j = 0; j < ritz.size(); j++)
  {
    if (!ritz.in_interval[j] || ritz.locked[j] || ritz.residual[j] < tol)
    {
      continue;
    }
    const double r = ritz.residual[j];
    if (!out || (stat == StagnationStatistic::min ? r < *out : r > *out))
    {
      out = r;
    }
  }
  return out;
}

Matrix deflate(const HermitianPencil &pencil, const LockedStore &store, Matrix M)
{
  if (store.size() == 0 || M.cols() == 0)
  {
    return M;
  }
  const Matrix &V = store.vectors;
  for (int pass = 0; pass < 2; pass++)
  {
    M -= V * (V.adjoint() * pencil.apply_b(M));
  }
  return M;
}

namespace
{

// x -= v (v^H B x) for each stored v in order, twice.
void b_orthogonalize(const HermitianPencil &pencil, const Matrix &V, Eigen::Ref<Vector> x)
{
  for (int pass = 0; pass < 2; pass++)
  {
    for (Eigen::Index i = 0; i < V.cols(); i++)
    {
      const Vector Bx = pencil.apply_b(x);
      x -= V.col(i) * V.col(i).dot(Bx);
    }
  }
}

}  // namespace

std::size_t lock_converged(const HermitianPencil &pencil, RitzSet &ritz, LockedStore &store)
{
  std::size_t newly = 0;
  for (std::size_t j = 0; j < ritz.size(); j++)
  {
    if (ritz.locked[j] || !ritz.converged[j] || !ritz.in_interval[j])
    {
      continue;
    }
    Vector x = ritz.X.col(j);
    b_orthogonalize(pencil, store.vectors, x);
    const Vector Bx = pencil.apply_b(x);
    const double bnorm = std::sqrt(std::abs(x.dot(Bx)));
    if (!(bnorm > 0.0))
    {
      continue;
    }
    x /= bnorm;
    store.vectors.conservativeResize(pencil.n(), store.size() + 1);
    store.vectors.col(store.size() - 1) = x;
    store.values.push_back(ritz.lambda[j]);
    store.residuals.push_back(ritz.residual[j]);
    ritz.locked[j] = true;
    newly++;
  }
  if (store.size() == 0)
  {
    return newly;
  }
  for (std::size_t j = 0; j < ritz.size(); j++)
  {
    if (ritz.locked[j])
    {
      continue;
    }
    auto x = ritz.X.col(j);
    b_orthogonalize(pencil, store.vectors, x);
    const double norm = x.norm();
    if (norm > 0.0)
    {
      x /= norm;
    }
  }
  return newly;
}

}  // namespace beast
