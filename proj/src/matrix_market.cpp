// SPDX-License-Identifier: Apache-2.0

#include "beast/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include "beast/errors.hpp"

namespace beast
{

namespace
{

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string &line)
{
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

// Next line that is neither a comment nor blank.
bool next_data_line(std::istream &in, std::string &line)
{
  while (std::getline(in, line))
  {
    if (!line.empty() && line[0] == '%')
    {
      continue;
    }
    if (!blank(line))
    {
      return true;
    }
  }
  return false;
}

}  // namespace

Matrix read_matrix_market(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw ParseError("empty Matrix Market stream");
  }
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix")
  {
    throw ParseError("missing '%%MatrixMarket matrix' banner");
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate" && format != "array")
  {
    throw ParseError("unsupported format '" + format + "'");
  }
  if (field != "real" && field != "integer" && field != "complex" && field != "double")
  {
    throw ParseError("unsupported field type '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian")
  {
    throw ParseError("unsupported symmetry '" + symmetry + "'");
  }
  const bool complex_field = field == "complex";
  const bool coordinate = format == "coordinate";

  if (!next_data_line(in, line))
  {
    throw ParseError("missing size line");
  }
  long rows = 0, cols = 0, entries = 0;
  {
    std::istringstream size(line);
    size >> rows >> cols;
    if (coordinate)
    {
      size >> entries;
    }
    if (!size || rows < 1 || cols < 1 || entries < 0)
    {
      throw ParseError("malformed size line '" + line + "'");
    }
  }
  const bool mirrored = symmetry != "general";
  if (mirrored && rows != cols)
  {
    throw ShapeError(symmetry + " matrix must be square");
  }

  Matrix M = Matrix::Zero(rows, cols);
  auto store = [&](long i, long j, std::complex<double> v)
  {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
    {
      throw ParseError("entry index (" + std::to_string(i + 1) + ", " +
                       std::to_string(j + 1) + ") out of range");
    }
    M(i, j) += v;
    if (mirrored && i != j)
    {
      M(j, i) += symmetry == "hermitian" ? std::conj(v) : v;
    }
  };
  auto parse_value = [&](std::istringstream &ls)
  {
    double re = 0.0, im = 0.0;
    ls >> re;
    if (complex_field)
    {
      ls >> im;
    }
    if (!ls)
    {
      throw ParseError("malformed entry '" + line + "'");
    }
    return std::complex<double>(re, im);
  };

  if (coordinate)
  {
    for (long e = 0; e < entries; e++)
    {
      if (!next_data_line(in, line))
      {
        throw ParseError("header declares " + std::to_string(entries) +
                         " entries but file contains " + std::to_string(e));
      }
      std::istringstream ls(line);
      long i = 0, j = 0;
      ls >> i >> j;
      const auto v = parse_value(ls);
      store(i - 1, j - 1, v);
    }
  }
  else
  {
    for (long j = 0; j < cols; j++)
    {
      for (long i = mirrored ? j : 0; i < rows; i++)
      {
        if (!next_data_line(in, line))
        {
          throw ParseError("array data ended early at (" + std::to_string(i + 1) + ", " +
                           std::to_string(j + 1) + ")");
        }
        std::istringstream ls(line);
        store(i, j, parse_value(ls));
      }
    }
  }
  if (next_data_line(in, line))
  {
    throw ParseError("trailing data after the declared entries: '" + line + "'");
  }
  return M;
}

Matrix read_matrix_market(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParseError("cannot open Matrix Market file '" + path.string() + "'");
  }
  try
  {
    return read_matrix_market(in);
  }
  catch (const ParseError &e)
  {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Matrix read_pencil_component(const std::filesystem::path &path)
{
  Matrix M = read_matrix_market(path);
  if (M.rows() != M.cols())
  {
    throw ShapeError(path.string() + ": matrix is " + std::to_string(M.rows()) + " x " +
                     std::to_string(M.cols()) + ", expected square");
  }
  if ((M - M.adjoint()).norm() > 1e-12 * M.norm())
  {
    throw SymmetryError(path.string() + ": matrix is not Hermitian");
  }
  return M;
}

void write_matrix_market(std::ostream &out, const Matrix &M)
{
  const bool real = is_real(M);
  Eigen::Index nnz = 0;
  for (Eigen::Index j = 0; j < M.cols(); j++)
  {
    for (Eigen::Index i = 0; i < M.rows(); i++)
    {
      nnz += M(i, j) != 0.0 ? 1 : 0;
    }
  }
  out << "%%MatrixMarket matrix coordinate " << (real ? "real" : "complex") << " general\n";
  out << M.rows() << ' ' << M.cols() << ' ' << nnz << '\n';
  out.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index j = 0; j < M.cols(); j++)
  {
    for (Eigen::Index i = 0; i < M.rows(); i++)
    {
      const auto v = M(i, j);
      if (v == 0.0)
      {
        continue;
      }
      out << i + 1 << ' ' << j + 1 << ' ' << v.real();
      if (!real)
      {
        out << ' ' << v.imag();
      }
      out << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path &path, const Matrix &M)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error("cannot write '" + path.string() + "'");
  }
  write_matrix_market(out, M);
}

}  // namespace beast
