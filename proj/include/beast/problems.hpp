// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>
#include "beast/contour.hpp"
#include "beast/linalg.hpp"

namespace beast
{

struct EigenProblem
{
  HermitianPencil pencil;
  Interval interval;
  int n_expect = 1;
  std::string label;
};

// A = diag(-2.99, -2.89, ..., 6.91), B = I, interval [-1, 1], 20 eigenvalues inside.
EigenProblem toy_problem();

// Tridiagonal (-1, 2, -1).
Matrix laplacian_1d(int n);

// Eigenvalue k (1-based) of laplacian_1d(n): 2 - 2 cos(k pi / (n + 1)).
double laplacian_eigenvalue(int n, int k);

// Interval around the Laplacian eigenvalues with indices [first, last] (1-based), with
// bounds halfway to the neighbouring eigenvalues.
EigenProblem laplacian_problem(int n, int first, int last);

// Dense random Hermitian A = V diag(d) V^H with five clusters of four eigenvalues inside
// [-1, 1] (intra-cluster gap up to cluster_gap) and the rest spread over +-[1.05, 4].
EigenProblem clustered_hermitian_problem(int n, std::uint64_t seed, double cluster_gap = 1e-3);

// n x p i.i.d. standard normal (real) entries; deterministic per seed.
Matrix random_initial_block(Eigen::Index n, Eigen::Index p, std::uint64_t seed);

struct ReferenceSpectrum
{
  std::vector<double> values;  // ascending, inside the interval
  Matrix vectors;              // B-orthonormal
};

// Dense oracle restricted to the search interval.
ReferenceSpectrum reference_spectrum(const EigenProblem &problem);

}  // namespace beast
