// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_QUADRATURE_HPP
#define LANGEVIN1D_QUADRATURE_HPP

#include <cmath>
#include <vector>

#include "langevin1d/core.hpp"

namespace langevin1d
{

struct QuadratureRule
{
  std::vector<double> points;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(int n)
{
  if (n < 1)
  {
    throw InvalidInput("gauss_legendre: need at least one point");
  }
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i)
  {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Map a reference rule onto [a, b].
inline QuadratureRule map_rule(const QuadratureRule &ref, double a, double b)
{
  QuadratureRule out;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t q = 0; q < ref.points.size(); ++q)
  {
    out.points.push_back(mid + half * ref.points[q]);
    out.weights.push_back(half * ref.weights[q]);
  }
  return out;
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_QUADRATURE_HPP
