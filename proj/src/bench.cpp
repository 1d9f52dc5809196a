// SPDX-License-Identifier: Apache-2.0

#include "beast/bench.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <json.hpp>
#include "beast/errors.hpp"
#include "beast/matrix_market.hpp"

namespace beast
{

namespace
{

std::string format_double(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_csv(const std::string &line)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ls(line);
  while (std::getline(ls, field, ','))
  {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',')
  {
    out.emplace_back();
  }
  return out;
}

}  // namespace

void write_trace_csv(std::ostream &out, const std::vector<IterationRecord> &trace)
{
  out << trace_csv_header << '\n';
  for (const auto &r : trace)
  {
    out << r.iteration << ',' << r.mode << ',' << r.s << ',' << r.q << ',' << r.rhs_1 << ','
        << r.rank << ',' << format_double(r.res_min) << ',' << format_double(r.res_avg) << ','
        << format_double(r.res_max) << ',' << r.locked << ',' << r.rhs_ovl << ',' << r.bls_ovl
        << '\n';
  }
}

std::vector<IterationRecord> parse_trace_csv(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line) || line != trace_csv_header)
  {
    throw ParseError("trace CSV header mismatch");
  }
  std::vector<IterationRecord> trace;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 12 || f[1].size() != 1)
    {
      throw ParseError("malformed trace row '" + line + "'");
    }
    try
    {
      IterationRecord r;
      r.iteration = std::stoi(f[0]);
      r.mode = f[1][0];
      r.s = std::stoi(f[2]);
      r.q = std::stoi(f[3]);
      r.rhs_1 = std::stoi(f[4]);
      r.rank = std::stoi(f[5]);
      r.res_min = std::stod(f[6]);
      r.res_avg = std::stod(f[7]);
      r.res_max = std::stod(f[8]);
      r.locked = std::stoi(f[9]);
      r.rhs_ovl = std::stoll(f[10]);
      r.bls_ovl = std::stoll(f[11]);
      trace.push_back(r);
    }
    catch (const std::logic_error &)
    {
      throw ParseError("malformed trace row '" + line + "'");
    }
  }
  return trace;
}

OracleComparison compare_with_oracle(const std::vector<double> &computed,
                                     const std::vector<double> &reference,
                                     const Interval &interval)
{
  std::vector<double> c = computed, r = reference;
  std::sort(c.begin(), c.end());
  std::sort(r.begin(), r.end());
  OracleComparison out;
  auto unmatched_computed = [&](double x)
  {
    if (interval.contains(x))
    {
      out.spurious.push_back(x);
    }
  };
  std::size_t i = 0, j = 0;
  while (i < r.size() && j < c.size())
  {
    const double atol = 1e-8 * std::max(1.0, std::abs(r[i]));
    if (std::abs(r[i] - c[j]) <= atol)
    {
      out.found_count++;
      i++;
      j++;
    }
    else if (c[j] < r[i])
    {
      unmatched_computed(c[j++]);
    }
    else
    {
      out.missed.push_back(r[i++]);
    }
  }
  for (; i < r.size(); i++)
  {
    out.missed.push_back(r[i]);
  }
  for (; j < c.size(); j++)
  {
    unmatched_computed(c[j]);
  }
  return out;
}

BenchRow score_run(const EigenProblem &problem, const std::string &solver, int repeat,
                   const SolveResult &result, const std::vector<double> &reference)
{
  BenchRow row;
  row.problem = problem.label;
  row.solver = solver;
  row.repeat = repeat;
  row.rhs_ovl = result.counters.rhs_ovl;
  row.bls_ovl = result.counters.bls_ovl;
  row.iterations = static_cast<int>(result.trace.size());
  row.found_count = compare_with_oracle(result.values, reference, problem.interval).found_count;
  row.expected_count = static_cast<int>(reference.size());
  row.status = std::string(to_string(result.status));
  row.success = row.found_count == row.expected_count && result.status == Status::converged;
  return row;
}

BenchReport run_bench(const std::vector<EigenProblem> &problems,
                      const std::vector<SolverConfig> &solvers, int repeats,
                      std::uint64_t seed)
{
  BenchReport report;
  std::vector<std::string> names;
  for (const auto &s : solvers)
  {
    names.push_back(solver_name(s));
  }
  for (const auto &problem : problems)
  {
    std::vector<double> reference;
    std::string oracle_error;
    try
    {
      reference = reference_spectrum(problem).values;
    }
    catch (const Error &e)
    {
      oracle_error = e.what();
    }
    for (std::size_t k = 0; k < solvers.size(); k++)
    {
      for (int rep = 0; rep < repeats; rep++)
      {
        SolverConfig config = solvers[k];
        config.rng_seed = seed + static_cast<std::uint64_t>(rep);
        BenchRow row;
        row.problem = problem.label;
        row.solver = names[k];
        row.repeat = rep;
        if (!oracle_error.empty())
        {
          row.status = "Error: oracle: " + oracle_error;
          report.rows.push_back(row);
          continue;
        }
        try
        {
          row = score_run(problem, names[k], rep, run(problem, config), reference);
        }
        catch (const SolveFailure &e)
        {
          row.iterations = static_cast<int>(e.trace().size());
          if (!e.trace().empty())
          {
            row.rhs_ovl = e.trace().back().rhs_ovl;
            row.bls_ovl = e.trace().back().bls_ovl;
          }
          row.expected_count = static_cast<int>(reference.size());
          row.status = std::string("Error: ") + e.what();
        }
        catch (const std::exception &e)
        {
          row.expected_count = static_cast<int>(reference.size());
          row.status = std::string("Error: ") + e.what();
        }
        report.rows.push_back(row);
      }
    }
  }
  report.aggregates = aggregate(report.rows, names);
  return report;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow> &rows,
                                      const std::vector<std::string> &solvers)
{
  // A (problem, repeat) run counts only if every solver succeeded on it.
  std::map<std::pair<std::string, int>, bool> all_ok;
  for (const auto &r : rows)
  {
    auto [it, inserted] = all_ok.try_emplace({r.problem, r.repeat}, true);
    it->second = it->second && r.success;
  }
  std::vector<BenchAggregate> out;
  for (const auto &name : solvers)
  {
    BenchAggregate agg;
    agg.solver = name;
    for (const auto &r : rows)
    {
      if (r.solver != name || !all_ok.at({r.problem, r.repeat}))
      {
        continue;
      }
      agg.runs++;
      agg.rhs_ovl += static_cast<double>(r.rhs_ovl);
      agg.bls_ovl += static_cast<double>(r.bls_ovl);
      agg.iterations += r.iterations;
    }
    if (agg.runs > 0)
    {
      agg.rhs_ovl /= agg.runs;
      agg.bls_ovl /= agg.runs;
      agg.iterations /= agg.runs;
    }
    out.push_back(agg);
  }
  return out;
}

void write_bench_csv(std::ostream &out, const BenchReport &report)
{
  auto sanitize = [](std::string s)
  {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  };
  out << bench_csv_header << '\n';
  for (const auto &r : report.rows)
  {
    out << sanitize(r.problem) << ',' << r.solver << ',' << r.repeat << ',' << r.rhs_ovl << ','
        << r.bls_ovl << ',' << r.iterations << ',' << r.found_count << ',' << r.expected_count
        << ',' << (r.success ? "true" : "false") << ',' << sanitize(r.status) << '\n';
  }
  // Aggregates: repeat holds the number of runs averaged.
  for (const auto &a : report.aggregates)
  {
    out << "MEAN," << a.solver << ',' << a.runs << ',';
    if (a.runs > 0)
    {
      out << format_double(a.rhs_ovl) << ',' << format_double(a.bls_ovl) << ','
          << format_double(a.iterations);
    }
    else
    {
      out << ",,";  // nothing to average
    }
    out << ",,,,aggregate\n";
  }
}

void write_rhs_bls_table(std::ostream &out, const BenchReport &report)
{
  std::vector<std::string> solvers;
  for (const auto &a : report.aggregates)
  {
    solvers.push_back(a.solver);
  }
  std::map<std::pair<std::string, int>, std::map<std::string, const BenchRow *>> grid;
  std::vector<std::pair<std::string, int>> order;
  for (const auto &r : report.rows)
  {
    auto key = std::make_pair(r.problem, r.repeat);
    if (!grid.count(key))
    {
      order.push_back(key);
    }
    grid[key][r.solver] = &r;
  }
  auto pad = [&](const std::string &s, std::size_t w)
  { out << s << std::string(w > s.size() ? w - s.size() : 1, ' '); };

  pad("problem", 28);
  for (const auto &s : solvers)
  {
    pad(s, 18);
  }
  out << '\n';
  for (const auto &key : order)
  {
    pad(key.first + "#" + std::to_string(key.second), 28);
    for (const auto &s : solvers)
    {
      const BenchRow *r = grid[key].count(s) ? grid[key][s] : nullptr;
      pad(r && r->success ? std::to_string(r->rhs_ovl) + " : " + std::to_string(r->bls_ovl)
                          : std::string("-"),
          18);
    }
    out << '\n';
  }
}

std::vector<EigenProblem> desk_suite()
{
  return {toy_problem(), laplacian_problem(200, 31, 50), laplacian_problem(200, 91, 110),
          laplacian_problem(200, 151, 170)};
}

std::vector<EigenProblem> load_suite(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParseError("cannot open suite file '" + path.string() + "'");
  }
  nlohmann::json doc;
  try
  {
    in >> doc;
  }
  catch (const nlohmann::json::exception &e)
  {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_array())
  {
    throw ParseError(path.string() + ": suite must be a JSON array");
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string &p)
  {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  std::vector<EigenProblem> out;
  for (const auto &entry : doc)
  {
    try
    {
      const std::string kind = entry.at("kind").get<std::string>();
      std::optional<EigenProblem> p;
      if (kind == "toy")
      {
        p = toy_problem();
      }
      else if (kind == "laplacian")
      {
        p = laplacian_problem(entry.at("n").get<int>(), entry.at("first").get<int>(),
                              entry.at("last").get<int>());
      }
      else if (kind == "clustered")
      {
        p = clustered_hermitian_problem(entry.at("n").get<int>(),
                                        entry.value("seed", std::uint64_t{1}),
                                        entry.value("cluster_gap", 1e-3));
      }
      else if (kind == "matrix")
      {
        const auto a_path = resolve(entry.at("path").get<std::string>());
        Matrix A = read_pencil_component(a_path);
        const auto &iv = entry.at("interval");
        Interval interval(iv.at(0).get<double>(), iv.at(1).get<double>());
        HermitianPencil pencil = entry.contains("matrix_b")
                                     ? HermitianPencil(std::move(A),
                                                       read_pencil_component(resolve(
                                                           entry.at("matrix_b").get<std::string>())))
                                     : HermitianPencil(std::move(A));
        p = EigenProblem{std::move(pencil), interval, entry.at("n_expect").get<int>(),
                         a_path.stem().string()};
      }
      else
      {
        throw ParseError("unknown problem kind '" + kind + "'");
      }
      if (entry.contains("interval"))
      {
        const auto &iv = entry.at("interval");
        p->interval = Interval(iv.at(0).get<double>(), iv.at(1).get<double>());
      }
      if (entry.contains("n_expect"))
      {
        p->n_expect = entry.at("n_expect").get<int>();
      }
      if (entry.contains("label"))
      {
        p->label = entry.at("label").get<std::string>();
      }
      out.push_back(std::move(*p));
    }
    catch (const nlohmann::json::exception &e)
    {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace beast
