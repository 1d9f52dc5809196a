// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>
#include "beast/contour.hpp"
#include "beast/linalg.hpp"

namespace beast
{

// Approximate eigenpairs, ascending in lambda. Columns of X have unit 2-norm and
// residual[j] = || A x_j - B x_j lambda_j ||_2.
struct RitzSet
{
  std::vector<double> lambda;
  Matrix X;
  std::vector<double> residual;
  std::vector<bool> in_interval;
  std::vector<bool> converged;
  std::vector<bool> locked;

  std::size_t size() const { return lambda.size(); }
  std::size_t active_count() const;
  std::vector<std::size_t> active_indices() const;
};

// Rayleigh-Ritz on span(Q); Q must have orthonormal columns.
RitzSet extract(const HermitianPencil &pencil, const Matrix &Q, const Interval &interval,
                double tol);

// Which residual summarizes the not-yet-converged pairs for the drop-rate test.
enum class StagnationStatistic
{
  min,
  max
};

// Over in-interval, unlocked pairs with residual >= tol; nullopt when there are none.
std::optional<double> smallest_nonconverged_residual(
    const RitzSet &ritz, double tol, StagnationStatistic stat = StagnationStatistic::min);

// Converged eigenpairs removed from the active problem. vectors are B-orthonormal.
struct LockedStore
{
  Matrix vectors;
  std::vector<double> values;
  std::vector<double> residuals;

  explicit LockedStore(Eigen::Index n = 0) : vectors(n, 0) {}
  Eigen::Index size() const { return vectors.cols(); }
};

// M - V (V^H B M), applied twice, for the locked vectors V.
Matrix deflate(const HermitianPencil &pencil, const LockedStore &store, Matrix M);

// Appends newly converged in-interval pairs to the store and B-orthogonalizes the
// remaining active Ritz vectors against it (modified Gram-Schmidt with one
// reorthogonalization pass, then renormalized to unit 2-norm). Returns the number locked.
std::size_t lock_converged(const HermitianPencil &pencil, RitzSet &ritz, LockedStore &store);

}  // namespace beast
