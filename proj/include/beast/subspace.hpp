// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>
#include "beast/contour.hpp"
#include "beast/linalg.hpp"

namespace beast
{

struct MomentConfig
{
  int s = 1;      // moments
  int rhs_1 = 1;  // columns of Y
  MomentConfig(int moments, int rhs);
  int m0() const { return s * rhs_1; }
};

// Overall solve cost: single right-hand sides and block systems.
struct CostCounters
{
  std::int64_t rhs_ovl = 0;
  std::int64_t bls_ovl = 0;

  void record(std::int64_t block_systems, std::int64_t rhs_per_block)
  {
    bls_ovl += block_systems;
    rhs_ovl += block_systems * rhs_per_block;
  }
};

// Polynomial weight per moment: raw z^k, or ((z - c) / r)^k about the contour center.
enum class MomentBasis
{
  raw,
  centered
};

// [U_0 | U_1 | ... | U_{s-1}], each block rhs_1 wide.
struct SubspaceBlock
{
  Matrix U;
  int moments = 1;
  Eigen::Index rhs_1 = 0;

  auto block(int k) const { return U.middleCols(k * rhs_1, rhs_1); }
};

// Reuses factorizations of z B - A across iterations for a fixed pencil. Lookup is by
// exact shift value, so a changed rule simply misses.
class FactorCache
{
public:
  std::shared_ptr<const ShiftedFactor> find(std::complex<double> z) const;
  void insert(std::shared_ptr<const ShiftedFactor> factor);
  std::size_t size() const { return factors_.size(); }

private:
  std::vector<std::shared_ptr<const ShiftedFactor>> factors_;
};

/**
 * U_k = sum_j w_j z_j^k (z_j B - A)^{-1} B Y for k < s.
 *
 * One factorization and one block solve per stored node; all moments are accumulated from
 * that solve in ascending node order. With a half-contour rule the pencil and Y must be
 * real, and each stored node contributes 2 Re(w_j z_j^k X_j). Counters grow by
 * stored_nodes block systems of Y.cols() right-hand sides. SingularShift is rethrown with
 * the node index attached.
 */
SubspaceBlock build_subspace(const HermitianPencil &pencil, const Matrix &Y,
                             const ContourRule &rule, int s, CostCounters &counters,
                             MomentBasis basis = MomentBasis::raw,
                             FactorCache *cache = nullptr);

struct TruncatedBasis
{
  Matrix Q;                      // orthonormal columns kept
  Eigen::Index rank = 0;
  RealVector sigma;              // full singular spectrum, descending
  Eigen::Index columns = 0;      // column count before truncation
};

inline constexpr double default_truncation = 1e-14;

// Keeps left singular vectors with sigma_i > delta * sigma_max. Throws ZeroSubspace when
// sigma_max == 0.
TruncatedBasis orthonormalize_truncate(const Matrix &U, double delta = default_truncation);

}  // namespace beast
