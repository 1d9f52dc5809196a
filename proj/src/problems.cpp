// SPDX-License-Identifier: Apache-2.0

#include "beast/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace beast
{

EigenProblem toy_problem()
{
  Matrix A = Matrix::Zero(100, 100);
  for (int i = 0; i < 100; i++)
  {
    // Integer steps keep the entries as close to -2.99 + 0.1 i as doubles allow.
    A(i, i) = (-299.0 + 10.0 * i) / 100.0;
  }
  return {HermitianPencil(std::move(A)), Interval(-1.0, 1.0), 20, "toy"};
}

Matrix laplacian_1d(int n)
{
  if (n < 2)
  {
    throw std::invalid_argument("Laplacian needs n >= 2");
  }
  Matrix L = Matrix::Zero(n, n);
  for (int i = 0; i < n; i++)
  {
    L(i, i) = 2.0;
    if (i + 1 < n)
    {
      L(i, i + 1) = -1.0;
      L(i + 1, i) = -1.0;
    }
  }
  return L;
}

double laplacian_eigenvalue(int n, int k)
{
  return 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
}

EigenProblem laplacian_problem(int n, int first, int last)
{
  if (first < 1 || last > n || first > last)
  {
    throw std::invalid_argument("Laplacian eigenvalue index range out of bounds");
  }
  auto ev = [n](int k) { return laplacian_eigenvalue(n, k); };
  const double lo = first > 1 ? 0.5 * (ev(first - 1) + ev(first))
                              : ev(first) - 0.5 * (ev(first + 1) - ev(first));
  const double hi = last < n ? 0.5 * (ev(last) + ev(last + 1))
                             : ev(last) + 0.5 * (ev(last) - ev(last - 1));
  return {HermitianPencil(laplacian_1d(n)), Interval(lo, hi), last - first + 1,
          "laplace" + std::to_string(n) + "[" + std::to_string(first) + ":" +
              std::to_string(last) + "]"};
}

EigenProblem clustered_hermitian_problem(int n, std::uint64_t seed, double cluster_gap)
{
  constexpr int clusters = 5, per_cluster = 4;
  if (n < clusters * per_cluster + 2)
  {
    throw std::invalid_argument("clustered problem needs n >= 22");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> d;
  for (int c = 0; c < clusters; c++)
  {
    const double center = -0.8 + 0.4 * c;
    for (int k = 0; k < per_cluster; k++)
    {
      d.push_back(center + cluster_gap * (k + unit(rng)) / per_cluster);
    }
  }
  while (static_cast<int>(d.size()) < n)
  {
    const double mag = 1.05 + 2.95 * unit(rng);
    d.push_back(unit(rng) < 0.5 ? -mag : mag);
  }

  Matrix G(n, n);
  for (Eigen::Index j = 0; j < n; j++)
  {
    for (Eigen::Index i = 0; i < n; i++)
    {
      G(i, j) = {normal(rng), normal(rng)};
    }
  }
  const Matrix V = Eigen::HouseholderQR<Matrix>(G).householderQ();
  RealVector dv = Eigen::Map<const RealVector>(d.data(), n);
  Matrix A = V * dv.cast<std::complex<double>>().asDiagonal() * V.adjoint();
  A = (0.5 * (A + A.adjoint())).eval();
  return {HermitianPencil(std::move(A)), Interval(-1.0, 1.0), clusters * per_cluster,
          "clustered" + std::to_string(n) + "-" + std::to_string(seed)};
}

Matrix random_initial_block(Eigen::Index n, Eigen::Index p, std::uint64_t seed)
{
  if (n < 1 || p < 1)
  {
    throw std::invalid_argument("random block needs n, p >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix Y(n, p);
  for (Eigen::Index j = 0; j < p; j++)
  {
    for (Eigen::Index i = 0; i < n; i++)
    {
      Y(i, j) = normal(rng);
    }
  }
  return Y;
}

ReferenceSpectrum reference_spectrum(const EigenProblem &problem)
{
  const HermitianEig full = hermitian_definite_eig(problem.pencil);
  ReferenceSpectrum out;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < full.values.size(); j++)
  {
    if (problem.interval.contains(full.values(j)))
    {
      keep.push_back(j);
      out.values.push_back(full.values(j));
    }
  }
  out.vectors = Matrix(problem.pencil.n(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); c++)
  {
    out.vectors.col(static_cast<Eigen::Index>(c)) = full.vectors.col(keep[c]);
  }
  return out;
}

}  // namespace beast
