// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_COMPARE_HPP
#define LANGEVIN1D_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "langevin1d/greens.hpp"
#include "langevin1d/oracle.hpp"
#include "langevin1d/scattering.hpp"

// FEM against the transfer-matrix oracle. Each residual is the L-infinity norm of the
// difference over a sample set divided by the L-infinity norm of the oracle values.
namespace langevin1d
{

struct OracleResiduals
{
  double k = 0.0;
  double reflection_transmission = 0.0;
  double fields = 0.0;
  double green = 0.0;

  double Max() const { return std::max({reflection_transmission, fields, green}); }
};

class LinfAccumulator
{
public:
  void Add(Complex value, Complex reference)
  {
    diff_ = std::max(diff_, std::abs(value - reference));
    ref_ = std::max(ref_, std::abs(reference));
  }
  double Relative() const { return ref_ > 0.0 ? diff_ / ref_ : diff_; }

private:
  double diff_ = 0.0;
  double ref_ = 0.0;
};

// r and t for both directions, total fields at the observation points for both directions,
// and G(x_a, x') at the slab quadrature points plus x' = x_a for each observation point.
inline OracleResiduals compare_with_oracle(const Mesh1D &mesh, const MediumSpec &medium, double k,
                                           std::span<const double> observation_points,
                                           int points_per_element = 4)
{
  const HelmholtzProblem problem(mesh, medium, k);
  OracleResiduals out;
  out.k = k;
  LinfAccumulator rt, fields, green;
  for (int direction : {1, -1})
  {
    const PlaneWaveSolution sol = solve_scattering(problem, direction);
    const auto [r, t] = extract_r_t(sol, mesh);
    const auto [r0, t0] = oracle::tmm_reflection_transmission(medium, k, direction);
    rt.Add(r, r0);
    rt.Add(t, t0);
    for (double x : observation_points)
    {
      fields.Add(total_field_at(sol, mesh, x), oracle::tmm_field(medium, k, direction, x));
    }
  }
  for (double x_a : observation_points)
  {
    const GreensSamples g = sample_slab(problem, x_a, points_per_element);
    green.Add(g.self_value, oracle::tmm_green(medium, k, x_a, x_a));
    for (std::size_t q = 0; q < g.quad_points.size(); ++q)
    {
      green.Add(g.values[q], oracle::tmm_green(medium, k, x_a, g.quad_points[q]));
    }
  }
  out.reflection_transmission = rt.Relative();
  out.fields = fields.Relative();
  out.green = green.Relative();
  return out;
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_COMPARE_HPP
