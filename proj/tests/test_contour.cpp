// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "beast/contour.hpp"
#include "beast/errors.hpp"

using namespace beast;

namespace
{

constexpr double pi = std::numbers::pi;

// Geometric-series form of the offset trapezoid filter on a circle: the nodes are the q-th
// roots of -1 (scaled), so sum_j 1/(1 - x/z_j) / q collapses to 1/(1 + x^q).
Complex offset_trapezoid_closed_form(Complex lambda, double c, double r, int q)
{
  const Complex x = (lambda - c) / r;
  return 1.0 / (1.0 + std::pow(x, q));
}

}  // namespace

TEST_CASE("gauss_legendre_rule small orders")
{
  auto r1 = gauss_legendre_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].first == doctest::Approx(0.0));
  CHECK(r1[0].second == doctest::Approx(2.0));

  auto r2 = gauss_legendre_rule(2);
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2[0].first + 0.5773502691896258) < 1e-15);
  CHECK(std::abs(r2[1].first - 0.5773502691896258) < 1e-15);
  CHECK(std::abs(r2[0].second - 1.0) < 1e-15);
  CHECK(std::abs(r2[1].second - 1.0) < 1e-15);

  auto r3 = gauss_legendre_rule(3);
  REQUIRE(r3.size() == 3);
  CHECK(std::abs(r3[0].first + 0.7745966692414834) < 1e-15);
  CHECK(std::abs(r3[1].first) < 1e-15);
  CHECK(std::abs(r3[2].first - 0.7745966692414834) < 1e-15);
  CHECK(std::abs(r3[0].second - 5.0 / 9.0) < 1e-15);
  CHECK(std::abs(r3[1].second - 8.0 / 9.0) < 1e-15);
  CHECK(std::abs(r3[2].second - 5.0 / 9.0) < 1e-15);
}

TEST_CASE("gauss_legendre_rule weights and polynomial exactness")
{
  for (int q : {4, 7, 8, 16, 31, 64})
  {
    const auto rule = gauss_legendre_rule(q);
    REQUIRE(rule.size() == static_cast<std::size_t>(q));
    double wsum = 0.0;
    for (std::size_t j = 0; j < rule.size(); j++)
    {
      CHECK(rule[j].second > 0.0);
      if (j > 0)
      {
        CHECK(rule[j].first > rule[j - 1].first);
      }
      wsum += rule[j].second;
    }
    CHECK(std::abs(wsum - 2.0) < 1e-13);
    // integral of x^d over [-1, 1]
    for (int d = 0; d <= 2 * q - 1; d++)
    {
      double sum = 0.0;
      for (const auto &[x, w] : rule)
      {
        sum += w * std::pow(x, d);
      }
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(sum - exact) < 1e-13);
    }
  }
}

TEST_CASE("build_contour offset trapezoid on the unit circle")
{
  const auto rule = build_contour(Interval(-1, 1), 1.0, RuleKind::trapezoidal, 4, false);
  REQUIRE(rule.nodes.size() == 4);
  for (int j = 0; j < 4; j++)
  {
    const Complex z = std::polar(1.0, pi * (2 * j + 1) / 4);
    CHECK(std::abs(rule.nodes[j] - z) < 1e-15);
    CHECK(std::abs(rule.coeffs[j] - z / 4.0) < 1e-15);
  }
}

TEST_CASE("build_contour half contour stores upper nodes")
{
  for (auto kind : {RuleKind::gauss_legendre, RuleKind::trapezoidal})
  {
    const auto rule = build_contour(Interval(-1, 1), 1.0, kind, 16, true);
    CHECK(rule.stored_nodes() == 8);
    CHECK(rule.coeffs.size() == 8);
    for (auto z : rule.nodes)
    {
      CHECK(z.imag() > 0.0);
    }
  }
}

TEST_CASE("build_contour ellipse stays in its bounding box")
{
  const auto rule = build_contour(Interval(0, 2), 0.1, RuleKind::gauss_legendre, 16, false);
  REQUIRE(rule.nodes.size() == 16);
  for (auto z : rule.nodes)
  {
    CHECK(std::abs(z.real() - 1.0) <= 1.0);
    CHECK(std::abs(z.imag()) <= 0.1);
    CHECK(z.imag() != 0.0);
  }
}

TEST_CASE("build_contour rejects bad parameters")
{
  const Interval iv(-1, 1);
  CHECK_THROWS(build_contour(iv, 0.0, RuleKind::gauss_legendre, 16, true));
  CHECK_THROWS(build_contour(iv, -0.5, RuleKind::gauss_legendre, 16, true));
  CHECK_THROWS(build_contour(iv, 1.5, RuleKind::gauss_legendre, 16, true));
  CHECK_THROWS(build_contour(iv, 0.1, RuleKind::gauss_legendre, 15, true));
  CHECK_THROWS(build_contour(iv, 0.1, RuleKind::trapezoidal, 1, false));
  CHECK_NOTHROW(build_contour(iv, 0.1, RuleKind::gauss_legendre, 15, false));
  CHECK_THROWS(Interval(1, 1));
  CHECK_THROWS(Interval(0, INFINITY));
}

TEST_CASE("filter normalization at the center")
{
  for (auto kind : {RuleKind::gauss_legendre, RuleKind::trapezoidal})
  {
    const auto circle = build_contour(Interval(-3, 5), 1.0, kind, 32, true);
    CHECK(std::abs(filter_value(circle, 0, 1.0) - 1.0) < 1e-8);
    // A flat ellipse converges slowly at its center, but still more nodes help.
    const auto flat16 = build_contour(Interval(-3, 5), 0.1, kind, 16, true);
    const auto flat64 = build_contour(Interval(-3, 5), 0.1, kind, 64, true);
    CHECK(std::abs(filter_value(flat64, 0, 1.0) - 1.0) <
          std::abs(filter_value(flat16, 0, 1.0) - 1.0));
  }
}

TEST_CASE("offset trapezoid filter values")
{
  const auto r8 = build_contour(Interval(-1, 1), 1.0, RuleKind::trapezoidal, 8, false);
  CHECK(std::abs(filter_value(r8, 0, 0.0) - 1.0) < 1e-15);
  // z_j^8 = -1 for the offset nodes, so f_0(2) = 1 / (1 + 2^8).
  CHECK(std::abs(filter_value(r8, 0, 2.0) - 1.0 / 257.0) < 1e-15);
  CHECK(std::abs(filter_value(r8, 0, 1e12)) < 1e-11);
  CHECK_THROWS_AS(filter_value(r8, 0, r8.nodes[3]), SingularEvaluation);
}

TEST_CASE("offset trapezoid filter matches the geometric closed form")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.0, 3.0), angle(0.0, 2 * pi);
  for (auto [c, r] : {std::pair{0.0, 1.0}, std::pair{2.5, 0.75}})
  {
    for (int q : {4, 8, 16})
    {
      const auto rule =
          build_contour(Interval(c - r, c + r), 1.0, RuleKind::trapezoidal, q, false);
      int checked = 0;
      while (checked < 100)
      {
        const double rho = radius(rng);
        if (std::abs(rho - 1.0) < 1e-3)
        {
          continue;
        }
        const Complex lambda = c + r * std::polar(rho, angle(rng));
        const Complex expect = offset_trapezoid_closed_form(lambda, c, r, q);
        const Complex got = filter_value(rule, 0, lambda);
        // Far outside, f_0 ~ |x|^-q is a heavily cancelling sum of O(1/q) terms; there
        // relative accuracy is bounded by rounding in the nodes themselves.
        const double tol = q <= 8 ? 1e-12 * std::abs(expect) : 1e-12 * std::abs(expect) + 1e-15;
        CHECK(std::abs(got - expect) <= tol);
        checked++;
      }
    }
  }
}

TEST_CASE("half and full contours give the same filter on the real line")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (auto kind : {RuleKind::gauss_legendre, RuleKind::trapezoidal})
  {
    const auto full = build_contour(Interval(-1, 2), 0.1, kind, 16, false);
    const auto half = build_contour(Interval(-1, 2), 0.1, kind, 16, true);
    for (int i = 0; i < 50; i++)
    {
      const double lambda = dist(rng);
      for (int k = 0; k < 4; k++)
      {
        const Complex a = filter_value(full, k, lambda);
        const Complex b = filter_value(half, k, lambda);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("Gauss-Legendre filter error shrinks as q doubles")
{
  const Interval iv(-1, 1);
  const auto r8 = build_contour(iv, 1.0, RuleKind::gauss_legendre, 8, false);
  const auto r16 = build_contour(iv, 1.0, RuleKind::gauss_legendre, 16, false);
  const auto r32 = build_contour(iv, 1.0, RuleKind::gauss_legendre, 32, false);
  for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5})
  {
    const double e8 = std::abs(filter_value(r8, 0, x) - 1.0);
    const double e16 = std::abs(filter_value(r16, 0, x) - 1.0);
    const double e32 = std::abs(filter_value(r32, 0, x) - 1.0);
    CHECK(e16 <= e8);
    CHECK(e32 <= e16);
  }
}

TEST_CASE("adapt_q worked examples")
{
  CHECK(adapt_q(16, 1e-2) == 16);
  CHECK(adapt_q(16, 0.1) == 20);
  CHECK(adapt_q(16, 0.5) == 24);
}

TEST_CASE("adapt_q boundaries, minimum step and parity")
{
  CHECK(adapt_q(16, std::pow(10.0, -1.5)) == 16);
  CHECK(adapt_q(16, std::pow(10.0, -0.75)) == 20);
  CHECK(adapt_q(2, 0.1) == 4);          // sqrt(1.5) * 2 rounds to 2, bumped to 3, then even
  CHECK(adapt_q(2, 0.1, false) == 3);
  CHECK(adapt_q(7, 0.5, false) == 11);  // 10.5 rounds half up
  CHECK(adapt_q(7, 0.5) == 12);
}

TEST_CASE("adapt_q is monotone in drop and never decreases")
{
  for (int q : {2, 3, 8, 16, 33, 64})
  {
    int prev = q;
    for (double e = -4.0; e <= 2.0; e += 0.05)
    {
      const int next = adapt_q(q, std::pow(10.0, e));
      CHECK(next >= q);
      CHECK(next >= prev);
      CHECK((next % 2 == 0 || next == q));
      prev = next;
    }
  }
}

TEST_CASE("rule kind names")
{
  CHECK(parse_rule_kind("gauss") == RuleKind::gauss_legendre);
  CHECK(parse_rule_kind("trapezoid") == RuleKind::trapezoidal);
  CHECK(parse_rule_kind(to_string(RuleKind::trapezoidal)) == RuleKind::trapezoidal);
  CHECK_THROWS(parse_rule_kind("simpson"));
}
