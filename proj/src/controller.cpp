// SPDX-License-Identifier: Apache-2.0

#include "beast/controller.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include "beast/errors.hpp"

namespace beast
{

std::string_view to_string(Mode mode)
{
  switch (mode)
  {
    case Mode::m_in:
      return "m-in";
    case Mode::m_out:
      return "m-out";
    case Mode::c:
      return "c";
  }
  return "?";
}

std::string_view to_string(Status status)
{
  switch (status)
  {
    case Status::converged:
      return "Converged";
    case Status::max_iterations:
      return "MaxIterations";
    case Status::stalled:
      return "Stalled";
  }
  return "?";
}

void SolverConfig::validate() const
{
  auto require = [](bool ok, const char *what)
  {
    if (!ok)
    {
      throw std::invalid_argument(what);
    }
  };
  require(subspace_factor > 1.0, "subspace factor must exceed 1");
  require(s_initial >= 1, "need at least one moment");
  require(m0 >= 0, "initial subspace size must be non-negative");
  require(n_expect >= 0, "expected eigenvalue count must be non-negative");
  require(tol > 0.0, "tolerance must be positive");
  require(max_iter >= 1, "need at least one iteration");
  require(stagnation_threshold > 0.0, "stagnation threshold must be positive");
  require(min_rhs >= 1, "minimum right-hand side count must be positive");
  require(quad.q >= 2, "need at least two quadrature nodes");
  require(quad.ecc > 0.0 && quad.ecc <= 1.0, "ellipse eccentricity must lie in (0, 1]");
  require(!quad.half_contour || quad.q % 2 == 0, "half-contour rule needs an even q");
  require(truncation >= 0.0 && truncation < 1.0, "truncation threshold must lie in [0, 1)");
  require(forced_switch_at >= 0, "forced switch iteration must be non-negative");
}

std::string solver_name(const SolverConfig &config)
{
  if (config.mode == Mode::c)
  {
    return config.adaptive_q ? "beast_c_ad" : "beast_c_n";
  }
  return std::string("beast_m_") + (config.switch_on_stagnation ? "x" : "n") +
         (config.mode == Mode::m_in ? "_in" : "_out");
}

SolverConfig apply_solver_name(SolverConfig base, std::string_view name)
{
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key.rfind("beast_", 0) == 0)
  {
    key = key.substr(6);
  }
  if (key == "c" || key == "c_n" || key == "c_ad")
  {
    base.mode = Mode::c;
    base.switch_on_stagnation = false;
    base.adaptive_q = key == "c_ad";
    return base;
  }
  if (key.size() == 7 || key.size() == 6)
  {
    // m_{x,n}_{in,out}
    const bool x = key.rfind("m_x_", 0) == 0;
    const bool n = key.rfind("m_n_", 0) == 0;
    const std::string tail = key.substr(4);
    if ((x || n) && (tail == "in" || tail == "out"))
    {
      base.mode = tail == "in" ? Mode::m_in : Mode::m_out;
      base.switch_on_stagnation = x;
      base.adaptive_q = false;
      return base;
    }
  }
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

bool detect_stagnation(std::optional<double> r_prev, std::optional<double> r_cur,
                       double threshold)
{
  if (!r_prev || !r_cur || !(*r_prev > 0.0))
  {
    return false;
  }
  return *r_cur / *r_prev > threshold;
}

Matrix next_initial_vectors(Mode mode, const Matrix &U0, const RitzSet &ritz, int rhs_target,
                            std::mt19937_64 &rng)
{
  if (rhs_target < 1)
  {
    throw std::invalid_argument("need at least one right-hand side");
  }
  if (mode == Mode::m_in)
  {
    return U0;
  }
  const auto active = ritz.active_indices();
  if (active.empty())
  {
    throw EmptyActiveSet("no active Ritz vectors to restart from");
  }
  Matrix Xa(ritz.X.rows(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t c = 0; c < active.size(); c++)
  {
    Xa.col(static_cast<Eigen::Index>(c)) = ritz.X.col(static_cast<Eigen::Index>(active[c]));
  }
  if (mode == Mode::c)
  {
    return Xa;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix R(Xa.cols(), rhs_target);
  for (Eigen::Index j = 0; j < R.cols(); j++)
  {
    for (Eigen::Index i = 0; i < R.rows(); i++)
    {
      R(i, j) = normal(rng);
    }
  }
  return Xa * R;
}

SubspaceSize resize_subspace(const SolverConfig &config, int locked_count, int s_current)
{
  if (locked_count < 0 || s_current < 1)
  {
    throw std::invalid_argument("invalid subspace resize request");
  }
  const int n_expect = std::max(config.n_expect, 1);
  const int remaining = std::max(n_expect - locked_count, 1);
  int m0 = 0;
  if (config.m0 > 0)
  {
    m0 = static_cast<int>((static_cast<long>(config.m0) * remaining + n_expect - 1) / n_expect);
  }
  else
  {
    // The small offset keeps products like 1.5 * 300 from rounding up past an integer.
    m0 = static_cast<int>(std::ceil(config.subspace_factor * remaining - 1e-9));
  }
  SubspaceSize out;
  out.rhs_1 = std::max(config.min_rhs, (m0 + s_current - 1) / s_current);
  out.m0_active = s_current * out.rhs_1;
  return out;
}

bool convergence_check(const RitzSet &ritz, const RealVector &sigma, double delta,
                       Eigen::Index columns, double tol)
{
  Eigen::Index in_interval = 0;
  for (std::size_t j = 0; j < ritz.size(); j++)
  {
    if (!ritz.in_interval[j] || ritz.locked[j])
    {
      continue;
    }
    if (!(ritz.residual[j] < tol))
    {
      return false;
    }
    in_interval++;
  }
  const double smax = sigma.size() ? sigma(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); i++)
  {
    rank += sigma(i) > delta * smax ? 1 : 0;
  }
  const bool saturated = rank == columns && in_interval >= rank;
  return !saturated;
}

namespace
{

// Columns of X picked by filter strength |f_0(lambda)|, kept in their original order.
Matrix strongest_columns(const Matrix &X, const std::vector<double> &lambda,
                         const ContourRule &rule, Eigen::Index count)
{
  std::vector<std::size_t> order(lambda.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> strength(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); j++)
  {
    strength[j] = std::abs(filter_value(rule, 0, lambda[j]));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return strength[a] > strength[b]; });
  order.resize(static_cast<std::size_t>(count));
  std::sort(order.begin(), order.end());
  Matrix out(X.rows(), count);
  for (Eigen::Index c = 0; c < count; c++)
  {
    out.col(c) = X.col(static_cast<Eigen::Index>(order[static_cast<std::size_t>(c)]));
  }
  return out;
}

IterationRecord make_record(int iteration, bool multi, int s, const ContourRule &rule,
                            Eigen::Index rhs_1, Eigen::Index rank, const RitzSet &ritz,
                            const LockedStore &store, int n_expect,
                            const CostCounters &counters)
{
  IterationRecord rec;
  rec.iteration = iteration;
  rec.mode = multi ? 'M' : 'C';
  rec.s = s;
  rec.q = rule.q;
  rec.rhs_1 = static_cast<int>(rhs_1);
  rec.rank = static_cast<int>(rank);
  rec.locked = static_cast<int>(store.size());
  rec.rhs_ovl = counters.rhs_ovl;
  rec.bls_ovl = counters.bls_ovl;

  std::vector<double> pool = store.residuals;
  for (std::size_t j = 0; j < ritz.size(); j++)
  {
    if (!ritz.locked[j])
    {
      pool.push_back(ritz.residual[j]);
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.resize(std::min(pool.size(), static_cast<std::size_t>(std::max(n_expect, 1))));
  if (!pool.empty())
  {
    rec.res_min = pool.front();
    rec.res_max = pool.back();
    rec.res_avg = std::accumulate(pool.begin(), pool.end(), 0.0) / static_cast<double>(pool.size());
    rec.res_avg = std::clamp(rec.res_avg, rec.res_min, rec.res_max);
  }
  return rec;
}

}  // namespace

SolveResult run(const EigenProblem &problem, const SolverConfig &config_in)
{
  config_in.validate();
  SolverConfig config = config_in;
  if (config.n_expect == 0)
  {
    config.n_expect = std::max(problem.n_expect, 1);
  }
  const HermitianPencil &pencil = problem.pencil;
  const Eigen::Index n = pencil.n();

  SolveResult result;
  result.half_contour = config.quad.half_contour && pencil.is_real();
  int q = config.quad.q;
  ContourRule rule =
      build_contour(problem.interval, config.quad.ecc, config.quad.kind, q, result.half_contour);

  bool multi = config.mode != Mode::c;
  int s = multi ? config.s_initial : 1;
  Matrix Y = random_initial_block(n, resize_subspace(config, 0, s).rhs_1, config.rng_seed);
  std::mt19937_64 rng(config.rng_seed ^ 0x9e3779b97f4a7c15ULL);

  LockedStore store(n);
  FactorCache cache;
  RitzSet ritz;
  std::optional<double> r_prev;
  std::optional<double> drop;
  bool residuals_done = false;
  result.status = Status::max_iterations;

  for (int it = 1; it <= config.max_iter; it++)
  {
    if (config.adaptive_q && !multi && drop)
    {
      const int next_q = adapt_q(q, *drop, result.half_contour);
      if (next_q != q)
      {
        q = next_q;
        rule = build_contour(problem.interval, config.quad.ecc, config.quad.kind, q,
                             result.half_contour);
      }
    }

    const Mode iteration_mode = multi ? config.mode : Mode::c;
    const int s_cur = multi ? s : 1;
    Y = deflate(pencil, store, std::move(Y));
    Matrix U0;
    TruncatedBasis basis;
    try
    {
      SubspaceBlock U = build_subspace(pencil, Y, rule, s_cur, result.counters,
                                       config.moment_basis, &cache);
      if (iteration_mode == Mode::m_in)
      {
        U0 = U.block(0);
      }
      basis = orthonormalize_truncate(deflate(pencil, store, std::move(U.U)), config.truncation);
      ritz = extract(pencil, basis.Q, problem.interval, config.tol);
    }
    catch (const Error &e)
    {
      throw SolveFailure("iteration " + std::to_string(it) + ": " + e.what(), result.trace);
    }

    const bool done =
        convergence_check(ritz, basis.sigma, config.truncation, basis.columns, config.tol);
    residuals_done = !smallest_nonconverged_residual(ritz, config.tol).has_value();
    if (config.locking)
    {
      lock_converged(pencil, ritz, store);
    }
    const auto r_cur =
        smallest_nonconverged_residual(ritz, config.tol, config.stagnation_statistic);
    const bool stagnant = detect_stagnation(r_prev, r_cur, config.stagnation_threshold);
    drop = (r_prev && r_cur && *r_prev > 0.0) ? std::optional(*r_cur / *r_prev) : std::nullopt;

    result.trace.push_back(make_record(it, multi, s_cur, rule, Y.cols(), basis.rank, ritz,
                                       store, config.n_expect, result.counters));
    if (done)
    {
      result.status = Status::converged;
      break;
    }

    if (multi && ((config.switch_on_stagnation && stagnant) || config.forced_switch_at == it))
    {
      multi = false;
      s = 1;
    }
    const Mode next_mode = multi ? config.mode : Mode::c;
    const int rhs_target = resize_subspace(config, static_cast<int>(store.size()), s).rhs_1;

    if (next_mode != Mode::m_in && ritz.active_count() == 0)
    {
      // Everything found so far is locked; restart from fresh random vectors.
      Y = random_initial_block(n, rhs_target, rng());
    }
    else
    {
      Y = next_initial_vectors(next_mode, U0, ritz, rhs_target, rng);
      if (next_mode == Mode::c && Y.cols() != rhs_target)
      {
        if (Y.cols() > rhs_target)
        {
          std::vector<double> active_lambda;
          for (auto j : ritz.active_indices())
          {
            active_lambda.push_back(ritz.lambda[j]);
          }
          Y = strongest_columns(Y, active_lambda, rule, rhs_target);
        }
        else
        {
          const Eigen::Index have = Y.cols();
          Y.conservativeResize(Eigen::NoChange, rhs_target);
          Y.rightCols(rhs_target - have) = random_initial_block(n, rhs_target - have, rng());
        }
      }
    }
    r_prev = r_cur;
  }

  if (result.status != Status::converged && residuals_done)
  {
    result.status = Status::stalled;
  }

  // Locked pairs plus any converged in-interval pairs still active (locking disabled).
  std::vector<std::pair<double, Eigen::Index>> found;
  for (Eigen::Index j = 0; j < store.size(); j++)
  {
    found.emplace_back(store.values[static_cast<std::size_t>(j)], j);
  }
  const Eigen::Index offset = store.size();
  for (std::size_t j = 0; j < ritz.size(); j++)
  {
    if (!ritz.locked[j] && ritz.in_interval[j] && ritz.converged[j])
    {
      found.emplace_back(ritz.lambda[j], offset + static_cast<Eigen::Index>(j));
    }
  }
  std::sort(found.begin(), found.end());
  result.vectors = Matrix(n, static_cast<Eigen::Index>(found.size()));
  for (std::size_t c = 0; c < found.size(); c++)
  {
    const auto [value, idx] = found[c];
    result.values.push_back(value);
    if (idx < offset)
    {
      result.vectors.col(static_cast<Eigen::Index>(c)) = store.vectors.col(idx);
      result.residuals.push_back(store.residuals[static_cast<std::size_t>(idx)]);
    }
    else
    {
      result.vectors.col(static_cast<Eigen::Index>(c)) = ritz.X.col(idx - offset);
      result.residuals.push_back(ritz.residual[static_cast<std::size_t>(idx - offset)]);
    }
  }
  return result;
}

}  // namespace beast
