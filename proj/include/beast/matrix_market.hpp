// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include "beast/linalg.hpp"

namespace beast
{

// Reads a Matrix Market file (coordinate or array; real, integer or complex; general,
// symmetric or hermitian) into a dense matrix with symmetric storage expanded.
Matrix read_matrix_market(const std::filesystem::path &path);
Matrix read_matrix_market(std::istream &in);

// As read_matrix_market, but additionally requires a square Hermitian matrix (relative
// tolerance 1e-12). Throws SymmetryError otherwise.
Matrix read_pencil_component(const std::filesystem::path &path);

// Writes a general coordinate file (real when M has no imaginary part) with round-trip
// precision.
void write_matrix_market(const std::filesystem::path &path, const Matrix &M);
void write_matrix_market(std::ostream &out, const Matrix &M);

}  // namespace beast
