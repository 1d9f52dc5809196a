// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beast
{

// Base class for all recoverable solver and I/O failures.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// The shifted matrix zB - A is (numerically) singular. When raised from a subspace build,
// node() is the index of the offending quadrature node.
class SingularShift : public Error
{
public:
  static constexpr std::size_t no_node = static_cast<std::size_t>(-1);

  explicit SingularShift(const std::string &what, std::size_t node = no_node)
    : Error(what), node_(node)
  {
  }

  std::size_t node() const { return node_; }

private:
  std::size_t node_;
};

class IndefiniteB : public Error
{
public:
  using Error::Error;
};

// Rayleigh-Ritz projected B lost definiteness (badly truncated basis).
class ReducedIndefinite : public Error
{
public:
  using Error::Error;
};

// All singular values of the filtered block vanished.
class ZeroSubspace : public Error
{
public:
  using Error::Error;
};

class EmptyActiveSet : public Error
{
public:
  using Error::Error;
};

class SingularEvaluation : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  using Error::Error;
};

class ShapeError : public Error
{
public:
  using Error::Error;
};

class SymmetryError : public Error
{
public:
  using Error::Error;
};

}  // namespace beast
