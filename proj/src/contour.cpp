// SPDX-License-Identifier: Apache-2.0

#include "beast/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include "beast/errors.hpp"

namespace beast
{

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_)
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
  {
    throw std::invalid_argument("interval must satisfy lo < hi with finite bounds, got [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

std::string_view to_string(RuleKind kind)
{
  return kind == RuleKind::gauss_legendre ? "gauss" : "trapezoid";
}

RuleKind parse_rule_kind(std::string_view name)
{
  if (name == "gauss" || name == "gauss_legendre")
  {
    return RuleKind::gauss_legendre;
  }
  if (name == "trapezoid" || name == "trapezoidal")
  {
    return RuleKind::trapezoidal;
  }
  throw std::invalid_argument("unknown quadrature rule '" + std::string(name) + "'");
}

std::vector<std::pair<double, double>> gauss_legendre_rule(int q)
{
  if (q < 1)
  {
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  }
  // P_q(x) and P_q'(x) by the three-term recurrence.
  auto legendre = [q](double x)
  {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; k++)
    {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, q * (x * p1 - p0) / (x * x - 1.0)};
  };

  std::vector<std::pair<double, double>> rule(q);
  for (int i = 0; i < (q + 1) / 2; i++)
  {
    // Newton from the asymptotic root estimate; roots come out descending.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; it++)
    {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16)
      {
        break;
      }
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {-x, w};
    rule[q - 1 - i] = {x, w};
  }
  if (q % 2 == 1)
  {
    rule[q / 2].first = 0.0;
  }
  return rule;
}

namespace
{

struct ParamNode
{
  double t;
  double weight;  // quadrature weight in the parameter t
};

std::vector<ParamNode> parameter_nodes(RuleKind kind, int q, bool upper_only)
{
  std::vector<ParamNode> out;
  const double pi = std::numbers::pi;
  if (kind == RuleKind::trapezoidal)
  {
    const int count = upper_only ? q / 2 : q;
    for (int j = 0; j < count; j++)
    {
      out.push_back({2.0 * pi * (j + 0.5) / q, 2.0 * pi / q});
    }
    return out;
  }
  if (q % 2 == 1)
  {
    // Odd full-contour Gauss-Legendre: one rule over the whole period.
    for (const auto &[x, w] : gauss_legendre_rule(q))
    {
      out.push_back({pi * (x + 1.0), pi * w});
    }
    return out;
  }
  const auto base = gauss_legendre_rule(q / 2);
  for (const auto &[x, w] : base)
  {
    out.push_back({0.5 * pi * (x + 1.0), 0.5 * pi * w});
  }
  if (!upper_only)
  {
    for (const auto &[x, w] : base)
    {
      out.push_back({pi + 0.5 * pi * (x + 1.0), 0.5 * pi * w});
    }
  }
  return out;
}

}  // namespace

ContourRule build_contour(const Interval &interval, double ecc, RuleKind kind, int q,
                          bool half_contour)
{
  if (!(ecc > 0.0) || ecc > 1.0)
  {
    throw std::invalid_argument("ellipse eccentricity must lie in (0, 1]");
  }
  if (q < 2)
  {
    throw std::invalid_argument("contour rule needs at least 2 nodes");
  }
  if (half_contour && q % 2 != 0)
  {
    throw std::invalid_argument("half-contour rule needs an even node count, got q = " +
                                std::to_string(q));
  }

  ContourRule rule;
  rule.center = interval.center();
  rule.radius_real = interval.half_width();
  rule.ecc = ecc;
  rule.rule_kind = kind;
  rule.q = q;
  rule.half_contour = half_contour;

  const Complex i_unit(0.0, 1.0);
  const double r = rule.radius_real;
  for (const auto &[t, w] : parameter_nodes(kind, q, half_contour))
  {
    const Complex z = rule.center + r * Complex(std::cos(t), ecc * std::sin(t));
    const Complex dz = r * Complex(-std::sin(t), ecc * std::cos(t));
    rule.nodes.push_back(z);
    rule.coeffs.push_back(w * dz / (2.0 * std::numbers::pi * i_unit));
  }
  return rule;
}

Complex filter_value(const ContourRule &rule, int k, Complex lambda)
{
  if (k < 0)
  {
    throw std::invalid_argument("moment index must be non-negative");
  }
  Complex sum = 0.0;
  auto term = [&](Complex z, Complex w)
  {
    const Complex d = z - lambda;
    if (std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z)))
    {
      throw SingularEvaluation("filter evaluated at a quadrature node");
    }
    return w * std::pow(z, k) / d;
  };
  for (std::size_t j = 0; j < rule.nodes.size(); j++)
  {
    sum += term(rule.nodes[j], rule.coeffs[j]);
    if (rule.half_contour)
    {
      sum += term(std::conj(rule.nodes[j]), std::conj(rule.coeffs[j]));
    }
  }
  return sum;
}

int adapt_q(int q, double drop, bool force_even)
{
  static const double slow = std::pow(10.0, -0.75);
  static const double fast = std::pow(10.0, -1.5);
  int next = q;
  if (drop > slow)
  {
    next = std::max(q + 1, static_cast<int>(std::floor(q * 1.5 + 0.5)));
  }
  else if (drop > fast)
  {
    next = std::max(q + 1, static_cast<int>(std::floor(q * std::sqrt(1.5) + 0.5)));
  }
  if (force_even && next % 2 != 0)
  {
    next++;
  }
  return next;
}

}  // namespace beast
