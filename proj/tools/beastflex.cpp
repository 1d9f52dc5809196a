// SPDX-License-Identifier: Apache-2.0

// Command-line front end: `solve` runs one configuration on one problem and optionally
// writes the convergence trace; `bench` runs solver variants over a problem suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>
#include <CLI11.hpp>
#include "beast/bench.hpp"
#include "beast/controller.hpp"
#include "beast/errors.hpp"
#include "beast/matrix_market.hpp"
#include "beast/problems.hpp"

namespace
{

using namespace beast;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_unconverged = 2;
constexpr int exit_verify = 3;
constexpr int exit_numerical = 4;

struct SolverFlags
{
  std::string mode = "m-out";
  std::string switch_on = "on";
  std::string adaptive_q = "off";
  int moments = 4;
  std::string quad = "gauss";
  int q = 16;
  double ecc = 0.1;
  std::string half = "on";
  double subspace_factor = 1.5;
  int m0 = 0;
  double tol = 1e-13;
  int max_iter = 50;
  int forced_switch_at = 0;
  std::string locking = "on";
  std::string moment_basis = "raw";
  std::string stagnation = "min";

  void add_to(CLI::App &app, bool with_mode)
  {
    const std::vector<std::string> on_off{"on", "off"};
    if (with_mode)
    {
      app.add_option("--mode", mode, "starting method")
          ->check(CLI::IsMember({"c", "m-in", "m-out"}));
      app.add_option("--switch", switch_on, "switch to single-moment on stagnation")
          ->check(CLI::IsMember(on_off));
      app.add_option("--adaptive-q", adaptive_q, "adapt q in single-moment iterations")
          ->check(CLI::IsMember(on_off));
    }
    app.add_option("--moments", moments, "initial number of moments")->check(CLI::PositiveNumber);
    app.add_option("--quad", quad, "quadrature rule")
        ->check(CLI::IsMember({"gauss", "trapezoid"}));
    app.add_option("--q", q, "quadrature nodes on the whole contour");
    app.add_option("--ecc", ecc, "ellipse ratio of imaginary to real semi-axis");
    app.add_option("--half", half, "exploit conjugate symmetry (real pencils)")
        ->check(CLI::IsMember(on_off));
    app.add_option("--subspace-factor", subspace_factor, "subspace size over expected count");
    app.add_option("--m0", m0, "explicit initial subspace size (overrides the factor)");
    app.add_option("--tol", tol, "residual tolerance");
    app.add_option("--max-iter", max_iter, "iteration limit");
    app.add_option("--forced-switch-at", forced_switch_at,
                   "switch to single-moment after this iteration");
    app.add_option("--locking", locking, "lock converged pairs")->check(CLI::IsMember(on_off));
    app.add_option("--moment-basis", moment_basis, "moment weights z^k or ((z-c)/r)^k")
        ->check(CLI::IsMember({"raw", "centered"}));
    app.add_option("--stagnation-statistic", stagnation, "residual summary for drop rate")
        ->check(CLI::IsMember({"min", "max"}));
  }

  SolverConfig config() const
  {
    SolverConfig c;
    c.mode = mode == "c" ? Mode::c : mode == "m-in" ? Mode::m_in : Mode::m_out;
    c.switch_on_stagnation = switch_on == "on" && c.mode != Mode::c;
    c.adaptive_q = adaptive_q == "on";
    c.s_initial = moments;
    c.quad.kind = parse_rule_kind(quad);
    c.quad.q = q;
    c.quad.ecc = ecc;
    c.quad.half_contour = half == "on";
    c.subspace_factor = subspace_factor;
    c.m0 = m0;
    c.tol = tol;
    c.max_iter = max_iter;
    c.forced_switch_at = forced_switch_at;
    c.locking = locking == "on";
    c.moment_basis = moment_basis == "raw" ? MomentBasis::raw : MomentBasis::centered;
    c.stagnation_statistic =
        stagnation == "min" ? StagnationStatistic::min : StagnationStatistic::max;
    return c;
  }
};

EigenProblem load_problem(bool toy, const std::string &matrix, const std::string &matrix_b,
                          int laplacian_n, const std::vector<double> &interval, int n_expect)
{
  const int sources = (toy ? 1 : 0) + (matrix.empty() ? 0 : 1) + (laplacian_n > 0 ? 1 : 0);
  if (sources != 1)
  {
    throw std::invalid_argument("give exactly one of --toy, --matrix, --laplacian");
  }
  std::optional<Interval> iv;
  if (!interval.empty())
  {
    iv = Interval(interval.at(0), interval.at(1));
  }
  if (toy)
  {
    EigenProblem p = toy_problem();
    if (iv)
    {
      p.interval = *iv;
    }
    if (n_expect > 0)
    {
      p.n_expect = n_expect;
    }
    return p;
  }
  // Read files first so a bad path is reported before missing flags.
  std::optional<Matrix> A, B;
  if (!matrix.empty())
  {
    A = read_pencil_component(matrix);
    if (!matrix_b.empty())
    {
      B = read_pencil_component(matrix_b);
    }
  }
  if (!iv)
  {
    throw std::invalid_argument("--interval is required with --matrix and --laplacian");
  }
  if (laplacian_n > 0)
  {
    int count = 0;
    for (int k = 1; k <= laplacian_n; k++)
    {
      count += iv->contains(laplacian_eigenvalue(laplacian_n, k)) ? 1 : 0;
    }
    return {HermitianPencil(laplacian_1d(laplacian_n)), *iv,
            n_expect > 0 ? n_expect : std::max(count, 1),
            "laplace" + std::to_string(laplacian_n)};
  }
  if (n_expect < 1)
  {
    throw std::invalid_argument("--n-expect is required with --matrix");
  }
  HermitianPencil pencil =
      B ? HermitianPencil(std::move(*A), std::move(*B)) : HermitianPencil(std::move(*A));
  return {std::move(pencil), *iv, n_expect, matrix};
}

int solve_command(const EigenProblem &problem, const SolverConfig &config,
                  const std::string &trace_path, bool verify)
{
  std::vector<IterationRecord> trace;
  auto write_trace = [&]
  {
    if (trace_path.empty())
    {
      return;
    }
    std::ofstream out(trace_path);
    if (!out)
    {
      throw std::invalid_argument("cannot write trace file '" + trace_path + "'");
    }
    write_trace_csv(out, trace);
  };

  SolveResult result;
  try
  {
    result = run(problem, config);
  }
  catch (const SolveFailure &e)
  {
    trace = e.trace();
    write_trace();
    std::fprintf(stderr, "beastflex: %s\n", e.what());
    return exit_numerical;
  }
  trace = result.trace;
  write_trace();

  std::printf("problem   %s (n = %ld, interval [%g, %g], n_expect %d)\n",
              problem.label.c_str(), static_cast<long>(problem.pencil.n()),
              problem.interval.lo, problem.interval.hi, problem.n_expect);
  std::printf("solver    %s\n", solver_name(config).c_str());
  std::printf("status    %s after %zu iterations\n", std::string(to_string(result.status)).c_str(),
              result.trace.size());
  std::printf("RHS_ovl : BLS_ovl  %lld : %lld\n", static_cast<long long>(result.counters.rhs_ovl),
              static_cast<long long>(result.counters.bls_ovl));
  std::printf("found     %zu eigenpairs\n", result.values.size());
  for (std::size_t j = 0; j < result.values.size(); j++)
  {
    std::printf("  %4zu  % .16e  %.3e\n", j, result.values[j], result.residuals[j]);
  }

  int code = result.status == Status::converged ? exit_ok : exit_unconverged;
  if (verify)
  {
    const auto reference = reference_spectrum(problem);
    const auto cmp = compare_with_oracle(result.values, reference.values, problem.interval);
    std::printf("verify    %d of %zu reference eigenvalues found, %zu missed, %zu spurious\n",
                cmp.found_count, reference.values.size(), cmp.missed.size(),
                cmp.spurious.size());
    const bool all = cmp.found_count == static_cast<int>(reference.values.size()) &&
                     cmp.spurious.empty();
    if (code == exit_ok && !all)
    {
      code = exit_verify;
    }
  }
  return code;
}

std::vector<std::string> split_list(const std::string &s)
{
  std::vector<std::string> out;
  std::string item;
  for (char ch : s + ",")
  {
    if (ch == ',')
    {
      if (!item.empty())
      {
        out.push_back(item);
      }
      item.clear();
    }
    else if (ch != ' ')
    {
      item += ch;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Contour-integration interior eigensolver with flexible moment iteration"};
  app.require_subcommand(1);

  auto *solve = app.add_subcommand("solve", "solve one interior eigenproblem");
  bool toy = false, verify = false;
  std::string matrix, matrix_b, trace_path;
  int laplacian_n = 0, n_expect = 0;
  std::vector<double> interval;
  std::uint64_t seed = 1;
  SolverFlags solve_flags;
  solve->add_flag("--toy", toy, "diag(-2.99, ..., 6.91) on [-1, 1]");
  solve->add_option("--matrix", matrix, "Matrix Market file for A");
  solve->add_option("--matrix-b", matrix_b, "Matrix Market file for B (default I)");
  solve->add_option("--laplacian", laplacian_n, "1D Laplacian of order N");
  solve->add_option("--interval", interval, "search interval LO HI")->expected(2);
  solve->add_option("--n-expect", n_expect, "expected eigenvalue count");
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--trace", trace_path, "write the per-iteration trace CSV here");
  solve->add_flag("--verify", verify, "score against the dense reference eigensolver");
  solve_flags.add_to(*solve, true);

  auto *bench = app.add_subcommand("bench", "run solver variants over a problem suite");
  std::string suite, solvers = "c,m-x-out", out_path;
  int repeats = 1;
  std::uint64_t bench_seed = 1;
  bool table = false;
  SolverFlags bench_flags;
  bench->add_option("--suite", suite, "JSON problem list (default: built-in desk suite)");
  bench->add_option("--solvers", solvers, "comma-separated solver variants");
  bench->add_option("--repeats", repeats, "runs per problem and solver")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "seed of the first repeat");
  bench->add_option("--out", out_path, "bench CSV path (default stdout)");
  bench->add_flag("--table", table, "print the RHS_ovl : BLS_ovl table to stdout");
  bench_flags.add_to(*bench, false);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    return app.exit(e) == 0 ? exit_ok : exit_input;
  }

  try
  {
    if (solve->parsed())
    {
      const EigenProblem problem =
          load_problem(toy, matrix, matrix_b, laplacian_n, interval, n_expect);
      SolverConfig config = solve_flags.config();
      config.rng_seed = seed;
      config.validate();
      return solve_command(problem, config, trace_path, verify);
    }

    const auto problems = suite.empty() ? desk_suite() : load_suite(suite);
    std::vector<SolverConfig> configs;
    for (const auto &name : split_list(solvers))
    {
      configs.push_back(apply_solver_name(bench_flags.config(), name));
      configs.back().validate();
    }
    const BenchReport report = run_bench(problems, configs, repeats, bench_seed);
    if (out_path.empty())
    {
      write_bench_csv(std::cout, report);
    }
    else
    {
      std::ofstream out(out_path);
      if (!out)
      {
        throw std::invalid_argument("cannot write '" + out_path + "'");
      }
      write_bench_csv(out, report);
    }
    if (table)
    {
      write_rhs_bls_table(std::cout, report);
    }
    return exit_ok;
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "beastflex: %s\n", e.what());
    return exit_input;
  }
}
