// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>
#include "beast/controller.hpp"
#include "beast/problems.hpp"

namespace beast
{

inline constexpr std::string_view trace_csv_header =
    "iteration,mode,s,q,rhs_1,rank,res_min,res_avg,res_max,locked,rhs_ovl,bls_ovl";

inline constexpr std::string_view bench_csv_header =
    "problem,solver,repeat,rhs_ovl,bls_ovl,iterations,found,expected,success,status";

void write_trace_csv(std::ostream &out, const std::vector<IterationRecord> &trace);
std::vector<IterationRecord> parse_trace_csv(std::istream &in);

struct OracleComparison
{
  int found_count = 0;
  std::vector<double> missed;    // reference eigenvalues without a computed match
  std::vector<double> spurious;  // computed in-interval values without a reference match
};

// Matches computed to reference eigenvalues (with multiplicity) within
// 1e-8 * max(1, |lambda|).
OracleComparison compare_with_oracle(const std::vector<double> &computed,
                                     const std::vector<double> &reference,
                                     const Interval &interval);

struct BenchRow
{
  std::string problem;
  std::string solver;
  int repeat = 0;
  std::int64_t rhs_ovl = 0;
  std::int64_t bls_ovl = 0;
  int iterations = 0;
  int found_count = 0;
  int expected_count = 0;
  bool success = false;
  std::string status;  // Status name, or "Error: ..." when the run aborted
};

// Mean over the (problem, repeat) runs in which every solver succeeded.
struct BenchAggregate
{
  std::string solver;
  int runs = 0;
  double rhs_ovl = 0.0;
  double bls_ovl = 0.0;
  double iterations = 0.0;
};

struct BenchReport
{
  std::vector<BenchRow> rows;
  std::vector<BenchAggregate> aggregates;
};

BenchRow score_run(const EigenProblem &problem, const std::string &solver, int repeat,
                   const SolveResult &result, const std::vector<double> &reference);

// One row per (problem, solver, repeat), in that nesting order. Run r uses
// rng_seed = seed + r. Failures are recorded, never thrown.
BenchReport run_bench(const std::vector<EigenProblem> &problems,
                      const std::vector<SolverConfig> &solvers, int repeats,
                      std::uint64_t seed);

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow> &rows,
                                      const std::vector<std::string> &solvers);

void write_bench_csv(std::ostream &out, const BenchReport &report);

// "RHS_ovl : BLS_ovl" table, one line per (problem, repeat), "-" for failed runs.
void write_rhs_bls_table(std::ostream &out, const BenchReport &report);

// Toy problem plus three 20-eigenvalue intervals of the n = 200 Laplacian.
std::vector<EigenProblem> desk_suite();

/**
 * Problem list from a JSON array. Each entry has a "kind":
 *   {"kind": "toy"}
 *   {"kind": "laplacian", "n": 200, "first": 31, "last": 50}
 *   {"kind": "clustered", "n": 150, "seed": 7, "cluster_gap": 1e-3}
 *   {"kind": "matrix", "path": "A.mtx", "matrix_b": "B.mtx", "interval": [lo, hi],
 *    "n_expect": 20, "label": "name"}
 * "interval", "n_expect" and "label" may override the defaults of any kind.
 */
std::vector<EigenProblem> load_suite(const std::filesystem::path &path);

}  // namespace beast
