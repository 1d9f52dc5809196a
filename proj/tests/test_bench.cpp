// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "beast/bench.hpp"
#include "beast/errors.hpp"
#include "test_util.hpp"

using namespace beast;

namespace
{

std::vector<std::string> lines(const std::string &text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
  {
    out.push_back(l);
  }
  return out;
}

BenchRow row(std::string problem, std::string solver, int repeat, std::int64_t rhs,
             bool success)
{
  BenchRow r;
  r.problem = std::move(problem);
  r.solver = std::move(solver);
  r.repeat = repeat;
  r.rhs_ovl = rhs;
  r.bls_ovl = rhs / 8;
  r.iterations = static_cast<int>(rhs / 100);
  r.success = success;
  r.status = success ? "Converged" : "MaxIterations";
  return r;
}

}  // namespace

TEST_CASE("trace CSV round trip")
{
  std::vector<IterationRecord> trace;
  trace.push_back({1, 'M', 4, 16, 8, 32, 1.25e-3, 0.1 / 3.0, 0.9, 0, 64, 8});
  trace.push_back({2, 'C', 1, 20, 30, 30, 3.0e-15, 7.123456789012345e-9, 1e-3, 12, 364, 18});
  std::stringstream io;
  write_trace_csv(io, trace);
  CHECK(lines(io.str()).front() == trace_csv_header);
  CHECK(parse_trace_csv(io) == trace);

  std::istringstream bad("iteration,mode\n1,M\n");
  CHECK_THROWS_AS(parse_trace_csv(bad), ParseError);
}

TEST_CASE("trace CSV of a real run round-trips")
{
  SolverConfig c = apply_solver_name(SolverConfig{}, "m-x-out");
  c.m0 = 32;
  const auto res = run(toy_problem(), c);
  std::stringstream io;
  write_trace_csv(io, res.trace);
  const std::string first = io.str();
  CHECK(parse_trace_csv(io) == res.trace);
  std::stringstream again;
  write_trace_csv(again, run(toy_problem(), c).trace);
  CHECK(again.str() == first);
}

TEST_CASE("oracle comparison")
{
  const Interval iv(-1, 1);
  std::vector<double> ref;
  for (int k = 0; k < 20; k++)
  {
    ref.push_back(-0.99 + 0.1 * k);
  }
  auto cmp = compare_with_oracle(ref, ref, iv);
  CHECK(cmp.found_count == 20);
  CHECK(cmp.missed.empty());
  CHECK(cmp.spurious.empty());

  auto partial = ref;
  partial.erase(partial.begin() + 7);
  cmp = compare_with_oracle(partial, ref, iv);
  CHECK(cmp.found_count == 19);
  REQUIRE(cmp.missed.size() == 1);
  CHECK(cmp.missed[0] == ref[7]);

  auto extra = ref;
  extra.push_back(0.333);
  extra.push_back(5.0);  // outside the interval, ignored
  cmp = compare_with_oracle(extra, ref, iv);
  CHECK(cmp.found_count == 20);
  CHECK(cmp.spurious == std::vector<double>{0.333});
}

TEST_CASE("oracle comparison counts multiplicity")
{
  EigenProblem p{HermitianPencil(testutil::diagonal({0.5, 0.5, 2.0})), Interval(0, 1), 2, "d"};
  const auto ref = reference_spectrum(p).values;
  REQUIRE(ref.size() == 2);
  auto cmp = compare_with_oracle({0.5}, ref, p.interval);
  CHECK(cmp.found_count == 1);
  CHECK(cmp.missed.size() == 1);
  cmp = compare_with_oracle({0.5, 0.5 + 1e-12}, ref, p.interval);
  CHECK(cmp.found_count == 2);
  CHECK(cmp.missed.empty());
  cmp = compare_with_oracle({0.5, 0.5, 0.5}, ref, p.interval);
  CHECK(cmp.found_count == 2);
  CHECK(cmp.spurious.size() == 1);
}

TEST_CASE("scoring")
{
  SolveResult res;
  res.values = {0.1, 0.2};
  res.status = Status::converged;
  auto r = score_run(toy_problem(), "beast_c_n", 0, res, {0.1, 0.2});
  CHECK(r.success);
  CHECK(r.found_count == 2);
  CHECK(r.expected_count == 2);
  res.status = Status::max_iterations;
  CHECK_FALSE(score_run(toy_problem(), "beast_c_n", 0, res, {0.1, 0.2}).success);
  res.status = Status::converged;
  CHECK_FALSE(score_run(toy_problem(), "beast_c_n", 0, res, {0.1, 0.2, 0.3}).success);
}

TEST_CASE("aggregates skip runs any solver failed")
{
  std::vector<BenchRow> rows = {
      row("a", "x", 0, 800, true),  row("a", "y", 0, 600, true),
      row("b", "x", 0, 1000, true), row("b", "y", 0, 5000, false),
      row("a", "x", 1, 900, true),  row("a", "y", 1, 500, true),
  };
  const auto agg = aggregate(rows, {"x", "y"});
  REQUIRE(agg.size() == 2);
  CHECK(agg[0].runs == 2);
  CHECK(agg[0].rhs_ovl == (800.0 + 900.0) / 2);
  CHECK(agg[0].bls_ovl == (100.0 + 112.0) / 2);
  CHECK(agg[1].rhs_ovl == (600.0 + 500.0) / 2);

  const auto none = aggregate({row("a", "x", 0, 1, false)}, {"x"});
  CHECK(none[0].runs == 0);
}

TEST_CASE("desk suite bench layout")
{
  std::vector<SolverConfig> solvers = {apply_solver_name(SolverConfig{}, "c"),
                                       apply_solver_name(SolverConfig{}, "m-x-out")};
  const auto report = run_bench(desk_suite(), solvers, 1, 1);
  CHECK(report.rows.size() == 8);
  CHECK(report.aggregates.size() == 2);
  std::stringstream csv;
  write_bench_csv(csv, report);
  const auto l = lines(csv.str());
  REQUIRE(l.size() == 11);
  CHECK(l[0] == bench_csv_header);
  CHECK(l[1].rfind("toy,beast_c_n,0,", 0) == 0);
  CHECK(l[9].rfind("MEAN,beast_c_n,", 0) == 0);
  for (const auto &r : report.rows)
  {
    CHECK(r.success);
  }
  // Means recompute from the rows.
  double sum = 0.0;
  for (const auto &r : report.rows)
  {
    sum += r.solver == "beast_m_x_out" ? static_cast<double>(r.rhs_ovl) : 0.0;
  }
  CHECK(report.aggregates[1].rhs_ovl == sum / 4);

  std::stringstream table;
  write_rhs_bls_table(table, report);
  CHECK(table.str().find(" : ") != std::string::npos);

  const auto again = run_bench(desk_suite(), solvers, 1, 1);
  std::stringstream csv2;
  write_bench_csv(csv2, again);
  CHECK(csv2.str() == csv.str());
}

TEST_CASE("bench records failures instead of aborting")
{
  SolverConfig bad = apply_solver_name(SolverConfig{}, "m-n-out");
  bad.max_iter = 2;
  const auto report = run_bench({toy_problem()}, {bad}, 2, 1);
  REQUIRE(report.rows.size() == 2);
  CHECK_FALSE(report.rows[0].success);
  CHECK(report.rows[0].status == "MaxIterations");
  CHECK(report.rows[1].repeat == 1);
}

TEST_CASE("suite files")
{
  const auto dir = std::filesystem::temp_directory_path() / "beast_suite_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.mtx") << "%%MatrixMarket matrix coordinate real symmetric\n"
                                    "3 3 3\n1 1 1\n2 2 2\n3 3 3\n";
    std::ofstream(dir / "suite.json")
        << R"([{"kind": "toy"},
               {"kind": "laplacian", "n": 50, "first": 3, "last": 6},
               {"kind": "clustered", "n": 60, "seed": 2},
               {"kind": "matrix", "path": "a.mtx", "interval": [1.5, 2.5], "n_expect": 1,
                "label": "three"},
               {"kind": "toy", "interval": [0, 2], "label": "toy-shifted"}])";
    std::ofstream(dir / "broken.json") << R"([{"kind": "nope"}])";
  }
  const auto suite = load_suite(dir / "suite.json");
  REQUIRE(suite.size() == 5);
  CHECK(suite[0].label == "toy");
  CHECK(suite[1].n_expect == 4);
  CHECK(suite[2].pencil.n() == 60);
  CHECK(suite[3].label == "three");
  CHECK(suite[3].pencil.n() == 3);
  CHECK(suite[4].interval.lo == 0.0);
  CHECK(suite[4].label == "toy-shifted");
  CHECK_THROWS_AS(load_suite(dir / "broken.json"), ParseError);
  CHECK_THROWS_AS(load_suite(dir / "absent.json"), ParseError);
  std::filesystem::remove_all(dir);
}
