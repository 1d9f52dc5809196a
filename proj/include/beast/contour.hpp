// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace beast
{

using Complex = std::complex<double>;

// Closed real search interval [lo, hi].
struct Interval
{
  double lo = -1.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double center() const { return 0.5 * (lo + hi); }
  double half_width() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

enum class RuleKind
{
  gauss_legendre,
  trapezoidal
};

std::string_view to_string(RuleKind kind);
RuleKind parse_rule_kind(std::string_view name);

/**
 * Quadrature nodes and coefficients on the ellipse
 *
 *   phi(t) = center + radius_real * (cos t + i * ecc * sin t),  t in [0, 2 pi),
 *
 * scaled so that sum_j coeffs[j] / (nodes[j] - lambda) approximates the indicator function
 * of the ellipse interior. With half_contour only the nodes in the upper half plane are
 * stored; their conjugates (with conjugate coefficients) complete the rule.
 */
struct ContourRule
{
  double center = 0.0;
  double radius_real = 1.0;
  double ecc = 1.0;
  RuleKind rule_kind = RuleKind::gauss_legendre;
  int q = 16;
  bool half_contour = true;
  std::vector<Complex> nodes;
  std::vector<Complex> coeffs;

  // Number of linear systems actually solved per application of the rule.
  std::size_t stored_nodes() const { return nodes.size(); }
};

// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre_rule(int q);

ContourRule build_contour(const Interval &interval, double ecc, RuleKind kind, int q,
                          bool half_contour);

// f_k(lambda) = sum_j w_j z_j^k / (z_j - lambda), summed over the full contour. Throws
// SingularEvaluation if lambda coincides with a node.
Complex filter_value(const ContourRule &rule, int k, Complex lambda);

// Adaptive node count from the drop rate of the smallest non-converged residual.
int adapt_q(int q, double drop, bool force_even = true);

}  // namespace beast
