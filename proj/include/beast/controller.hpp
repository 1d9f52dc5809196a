// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>
#include "beast/contour.hpp"
#include "beast/errors.hpp"
#include "beast/problems.hpp"
#include "beast/ritz.hpp"
#include "beast/subspace.hpp"

namespace beast
{

// Starting method. m_in / m_out build multi-moment subspaces with inner (Y := U_0) or
// outer (Y := X R) restarts; c is single-moment subspace iteration with Y := X.
enum class Mode
{
  m_in,
  m_out,
  c
};

enum class Status
{
  converged,
  max_iterations,
  stalled
};

std::string_view to_string(Mode mode);
std::string_view to_string(Status status);

struct QuadratureConfig
{
  RuleKind kind = RuleKind::gauss_legendre;
  int q = 16;
  double ecc = 0.1;
  bool half_contour = true;  // ignored for complex pencils
};

struct SolverConfig
{
  Mode mode = Mode::m_out;
  bool switch_on_stagnation = true;  // "x" variants
  bool adaptive_q = false;           // "ad", applied in single-moment iterations only
  int s_initial = 4;
  double subspace_factor = 1.5;
  int m0 = 0;         // explicit initial subspace size; 0 derives it from subspace_factor
  int n_expect = 0;   // 0 takes the problem's estimate
  double tol = 1e-13;
  int max_iter = 50;
  double stagnation_threshold = 0.01;
  StagnationStatistic stagnation_statistic = StagnationStatistic::min;
  QuadratureConfig quad;
  std::uint64_t rng_seed = 1;
  int min_rhs = 4;
  double truncation = default_truncation;
  bool locking = true;
  int forced_switch_at = 0;  // switch to single-moment after this iteration; 0 disables
  MomentBasis moment_basis = MomentBasis::raw;

  void validate() const;
};

// Solver variant names: beast_c_n, beast_c_ad, beast_m_{n,x}_{in,out}.
std::string solver_name(const SolverConfig &config);
// Applies a variant name (long form above or short form c, c-ad, m-x-out, ...) to base.
SolverConfig apply_solver_name(SolverConfig base, std::string_view name);

struct IterationRecord
{
  int iteration = 0;
  char mode = 'M';  // 'M' multi-moment, 'C' single-moment
  int s = 1;
  int q = 0;
  int rhs_1 = 0;
  int rank = 0;
  double res_min = 0.0;
  double res_avg = 0.0;
  double res_max = 0.0;
  int locked = 0;
  std::int64_t rhs_ovl = 0;
  std::int64_t bls_ovl = 0;

  bool operator==(const IterationRecord &) const = default;
};

struct SolveResult
{
  std::vector<double> values;  // ascending
  Matrix vectors;
  std::vector<double> residuals;
  std::vector<IterationRecord> trace;
  CostCounters counters;
  Status status = Status::max_iterations;
  bool half_contour = false;  // whether conjugate symmetry was used
};

// Raised when a numerical failure aborts a run; carries the trace up to the failure.
class SolveFailure : public Error
{
public:
  SolveFailure(const std::string &what, std::vector<IterationRecord> trace)
    : Error(what), trace_(std::move(trace))
  {
  }
  const std::vector<IterationRecord> &trace() const { return trace_; }

private:
  std::vector<IterationRecord> trace_;
};

SolveResult run(const EigenProblem &problem, const SolverConfig &config);

bool detect_stagnation(std::optional<double> r_prev, std::optional<double> r_cur,
                       double threshold);

// Y for the next iteration: m_in -> U0, m_out -> X_active R with R standard normal
// (width(X_active) x rhs_target), c -> X_active.
Matrix next_initial_vectors(Mode mode, const Matrix &U0, const RitzSet &ritz, int rhs_target,
                            std::mt19937_64 &rng);

struct SubspaceSize
{
  int rhs_1 = 0;
  int m0_active = 0;
};

SubspaceSize resize_subspace(const SolverConfig &config, int locked_count, int s_current);

/**
 * True iff every active in-interval Ritz pair has residual < tol and the filtered subspace
 * is not saturated. The subspace counts as saturated when its numerical rank (sigma_i >
 * delta sigma_max) equals the column count and every kept direction is occupied by an
 * in-interval pair, i.e. there is no evidence that the interval has been exhausted.
 */
bool convergence_check(const RitzSet &ritz, const RealVector &sigma, double delta,
                       Eigen::Index columns, double tol);

}  // namespace beast
