// SPDX-License-Identifier: Apache-2.0

#include "beast/subspace.hpp"

#include <stdexcept>
#include <string>
#include "beast/errors.hpp"
#include "beast/parallel.hpp"

namespace beast
{

MomentConfig::MomentConfig(int moments, int rhs) : s(moments), rhs_1(rhs)
{
  if (s < 1 || rhs_1 < 1)
  {
    throw std::invalid_argument("moment count and right-hand sides must be positive");
  }
}

std::shared_ptr<const ShiftedFactor> FactorCache::find(std::complex<double> z) const
{
  for (const auto &f : factors_)
  {
    if (f->shift() == z)
    {
      return f;
    }
  }
  return nullptr;
}

void FactorCache::insert(std::shared_ptr<const ShiftedFactor> factor)
{
  if (!find(factor->shift()))
  {
    factors_.push_back(std::move(factor));
  }
}

SubspaceBlock build_subspace(const HermitianPencil &pencil, const Matrix &Y,
                             const ContourRule &rule, int s, CostCounters &counters,
                             MomentBasis basis, FactorCache *cache)
{
  if (s < 1)
  {
    throw std::invalid_argument("need at least one moment");
  }
  if (Y.cols() < 1 || Y.rows() != pencil.n())
  {
    throw ShapeError("initial block must be n x p with p >= 1");
  }
  if (rule.nodes.empty() || rule.nodes.size() != rule.coeffs.size())
  {
    throw std::invalid_argument("malformed contour rule");
  }
  if (rule.half_contour && !(pencil.is_real() && is_real(Y)))
  {
    throw std::invalid_argument("half-contour accumulation needs a real pencil and real Y");
  }

  const std::size_t nodes = rule.stored_nodes();
  std::vector<std::shared_ptr<const ShiftedFactor>> factors(nodes);
  if (cache)
  {
    for (std::size_t j = 0; j < nodes; j++)
    {
      factors[j] = cache->find(rule.nodes[j]);
    }
  }

  std::vector<Matrix> solutions(nodes);
  parallel_for(nodes,
               [&](std::size_t j)
               {
                 if (!factors[j])
                 {
                   try
                   {
                     factors[j] = std::make_shared<const ShiftedFactor>(pencil, rule.nodes[j]);
                   }
                   catch (const SingularShift &e)
                   {
                     throw SingularShift(std::string(e.what()) + " (node " +
                                             std::to_string(j) + ")",
                                         j);
                   }
                 }
                 solutions[j] = factors[j]->solve(Y);
               });
  if (cache)
  {
    for (const auto &f : factors)
    {
      cache->insert(f);
    }
  }

  const Eigen::Index p = Y.cols();
  SubspaceBlock out;
  out.moments = s;
  out.rhs_1 = p;
  out.U = Matrix::Zero(pencil.n(), s * p);
  for (std::size_t j = 0; j < nodes; j++)
  {
    const std::complex<double> base =
        basis == MomentBasis::raw ? rule.nodes[j]
                                  : (rule.nodes[j] - rule.center) / rule.radius_real;
    std::complex<double> weight = rule.coeffs[j];
    for (int k = 0; k < s; k++)
    {
      auto Uk = out.U.middleCols(k * p, p);
      if (rule.half_contour)
      {
        Uk.real() += 2.0 * (weight * solutions[j]).real();
      }
      else
      {
        Uk += weight * solutions[j];
      }
      weight *= base;
    }
  }
  counters.record(static_cast<std::int64_t>(nodes), static_cast<std::int64_t>(p));
  return out;
}

TruncatedBasis orthonormalize_truncate(const Matrix &U, double delta)
{
  if (U.size() == 0)
  {
    throw std::invalid_argument("cannot orthonormalize an empty block");
  }
  TruncatedBasis out;
  out.columns = U.cols();
  SvdResult svd = svd_with_values(U);
  out.sigma = std::move(svd.values);
  const double smax = out.sigma.size() ? out.sigma(0) : 0.0;
  if (!(smax > 0.0))
  {
    throw ZeroSubspace("filtered subspace is identically zero");
  }
  Eigen::Index rank = 0;
  while (rank < out.sigma.size() && out.sigma(rank) > delta * smax)
  {
    rank++;
  }
  out.rank = rank;
  out.Q = svd.left.leftCols(rank);
  return out;
}

}  // namespace beast
