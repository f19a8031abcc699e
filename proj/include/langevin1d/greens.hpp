// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_GREENS_HPP
#define LANGEVIN1D_GREENS_HPP

#include <vector>

#include "langevin1d/fem.hpp"

namespace langevin1d
{

// Solved field G(., x_src) on a mesh.
struct FieldSolution
{
  double k = 0.0;
  double source = 0.0;
  ComplexVector dofs;

  Complex At(const Mesh1D &mesh, double x) const { return evaluate_field(mesh, dofs, x); }
};

//
// G(x_a, x'_q) sampled at Gauss points covering the slab, plus G(x_a, x_a).
//
struct GreensSamples
{
  double k = 0.0;
  double observation = 0.0;
  std::vector<double> quad_points;
  std::vector<double> weights;
  ComplexVector values;
  Complex self_value;
};

// Solves L g = e with e_i = phi_i(x_src); g is G with (d^2/dx^2 + k^2 eps_r) G = -delta.
inline FieldSolution solve_point_source(const HelmholtzProblem &problem, double x_src)
{
  const Mesh1D &mesh = *problem.mesh;
  const auto node = mesh.NodeIndex(x_src);
  if (!node)
  {
    throw InvalidInput("solve_point_source: source position is not a mesh node");
  }
  if (mesh.InPml(x_src))
  {
    throw InvalidInput("solve_point_source: source lies inside the PML");
  }
  const auto dof = mesh.DofOfNode(*node);
  if (!dof)
  {
    throw InvalidInput("solve_point_source: source on a Dirichlet node");
  }
  ComplexVector rhs(mesh.NumDofs());
  rhs[*dof] = 1.0;
  return {problem.K(), x_src, problem.factorization.Solve(rhs)};
}

inline FieldSolution solve_point_source(const Mesh1D &mesh, const MediumSpec &medium, double k,
                                        double x_src)
{
  return solve_point_source(HelmholtzProblem(mesh, medium, k), x_src);
}

// Gauss points over every slab element.
inline QuadratureRule slab_quadrature(const Mesh1D &mesh, int points_per_element)
{
  if (points_per_element < 2)
  {
    throw InvalidInput("slab quadrature: need at least 2 points per element");
  }
  const QuadratureRule ref = gauss_legendre(points_per_element);
  QuadratureRule rule;
  for (std::size_t e = 0; e < mesh.NumElements(); ++e)
  {
    if (mesh.regions[e] != Region::Slab)
    {
      continue;
    }
    const QuadratureRule part = map_rule(ref, mesh.nodes[e], mesh.nodes[e + 1]);
    rule.points.insert(rule.points.end(), part.points.begin(), part.points.end());
    rule.weights.insert(rule.weights.end(), part.weights.begin(), part.weights.end());
  }
  return rule;
}

// One solve with the source at x_a; reciprocity gives G(x_a, x') = G(x', x_a).
inline GreensSamples sample_slab(const HelmholtzProblem &problem, double x_a,
                                 int points_per_element = 4)
{
  const FieldSolution g = solve_point_source(problem, x_a);
  const QuadratureRule rule = slab_quadrature(*problem.mesh, points_per_element);
  GreensSamples out;
  out.k = problem.K();
  out.observation = x_a;
  out.quad_points = rule.points;
  out.weights = rule.weights;
  out.values.reserve(rule.points.size());
  for (double xq : rule.points)
  {
    out.values.push_back(g.At(*problem.mesh, xq));
  }
  out.self_value = g.At(*problem.mesh, x_a);
  return out;
}

inline GreensSamples sample_slab(const Mesh1D &mesh, const MediumSpec &medium, double k,
                                 double x_a, int points_per_element = 4)
{
  return sample_slab(HelmholtzProblem(mesh, medium, k), x_a, points_per_element);
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_GREENS_HPP
