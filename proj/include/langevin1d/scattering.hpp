// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_SCATTERING_HPP
#define LANGEVIN1D_SCATTERING_HPP

#include <cmath>
#include <utility>

#include "langevin1d/fem.hpp"

namespace langevin1d
{

// Plane wave amplitude 1/sqrt(eps_0 c), which is 1 in normalized units.
inline constexpr double kPlaneWaveAmplitude = 1.0;

inline Complex incident_field(int direction, double k, double x)
{
  return kPlaneWaveAmplitude * std::exp(I * (static_cast<double>(direction) * k * x));
}

//
// Scattered-field solution for one incidence direction (+1: k_x = +k, -1: k_x = -k).
//
struct PlaneWaveSolution
{
  int direction = 1;
  double k = 0.0;
  ComplexVector scattered_dofs;
  double amplitude = kPlaneWaveAmplitude;
};

// f_i = int phi_i k^2 chi Phi_inc dx over slab elements (4-point Gauss per element).
inline ComplexVector scattering_rhs(const Mesh1D &mesh, const MediumSpec &medium, double k,
                                    int direction)
{
  ComplexVector f(mesh.NumDofs());
  const Complex chi = susceptibility(medium, k);
  for (std::size_t e = 0; e < mesh.NumElements(); ++e)
  {
    if (mesh.regions[e] != Region::Slab)
    {
      continue;
    }
    const double x0 = mesh.nodes[e], x1 = mesh.nodes[e + 1], h = x1 - x0;
    const QuadratureRule rule = map_rule(detail::gauss4(), x0, x1);
    Complex f0 = 0.0, f1 = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
      const double x = rule.points[q];
      const Complex src = rule.weights[q] * k * k * chi * incident_field(direction, k, x);
      f0 += src * (x1 - x) / h;
      f1 += src * (x - x0) / h;
    }
    if (auto d = mesh.DofOfNode(e))
    {
      f[*d] += f0;
    }
    if (auto d = mesh.DofOfNode(e + 1))
    {
      f[*d] += f1;
    }
  }
  return f;
}

inline PlaneWaveSolution solve_scattering(const HelmholtzProblem &problem, int direction)
{
  if (direction != 1 && direction != -1)
  {
    throw InvalidInput("solve_scattering: direction must be +1 or -1");
  }
  PlaneWaveSolution sol;
  sol.direction = direction;
  sol.k = problem.K();
  sol.scattered_dofs = problem.factorization.Solve(
      scattering_rhs(*problem.mesh, problem.medium, problem.K(), direction));
  return sol;
}

inline PlaneWaveSolution solve_scattering(const Mesh1D &mesh, const MediumSpec &medium, double k,
                                          int direction)
{
  return solve_scattering(HelmholtzProblem(mesh, medium, k), direction);
}

inline Complex scattered_field_at(const PlaneWaveSolution &sol, const Mesh1D &mesh, double x)
{
  return evaluate_field(mesh, sol.scattered_dofs, x);
}

// Phi_tot = Phi_inc + Phi_sca; undefined inside the PML.
inline Complex total_field_at(const PlaneWaveSolution &sol, const Mesh1D &mesh, double x)
{
  if (mesh.InPml(x))
  {
    throw InvalidInput("total_field_at: position lies inside the PML");
  }
  return sol.amplitude * std::exp(I * (sol.direction * sol.k * x)) +
         scattered_field_at(sol, mesh, x);
}

namespace detail
{

// Phase a discrete vacuum wave accumulates between two nodes. On an element of length h the
// P1 consistent-mass stencil propagates e^{i theta} with
// cos theta = (1 - (kh)^2/3) / (1 + (kh)^2/6).
inline double discrete_phase(const Mesh1D &mesh, double k, double x0, double x1)
{
  const double lo = std::min(x0, x1), hi = std::max(x0, x1);
  double phase = 0.0;
  for (std::size_t e = 0; e + 1 < mesh.nodes.size(); ++e)
  {
    if (mesh.nodes[e] >= lo - 1e-14 && mesh.nodes[e + 1] <= hi + 1e-14)
    {
      const double kh2 = std::pow(k * mesh.ElementLength(e), 2);
      phase += std::acos((1.0 - kh2 / 3.0) / (1.0 + kh2 / 6.0));
    }
  }
  return phase;
}

}  // namespace detail

//
// Reflection and transmission. In the mirrored coordinate y = direction * x the reflected
// wave is r e^{-ik(y + L_s)} for y < -L_s/2, so r is referenced to the entry face, and the
// transmitted wave is t e^{iky} for y > L_s/2, so t = 1 without a slab.
// The scattered wave is carried from the probe back to the face with the discrete phase of
// the mesh, so the result does not drift with probe distance.
//
inline std::pair<Complex, Complex> extract_r_t(const PlaneWaveSolution &sol, const Mesh1D &mesh)
{
  if (!mesh.HasPml())
  {
    throw InvalidInput("extract_r_t: requires an open (PML) mesh");
  }
  const double a = mesh.slab_half_length, k = sol.k;
  const double lambda = 2.0 * pi / k;
  const double x_in = (sol.direction > 0) ? mesh.probe_left : mesh.probe_right;
  const double x_out = (sol.direction > 0) ? mesh.probe_right : mesh.probe_left;
  for (double xp : {x_in, x_out})
  {
    const double to_slab = std::abs(xp) - a;
    const double to_pml = std::min(xp - mesh.pml_inner_left, mesh.pml_inner_right - xp);
    if (to_slab < 0.5 * lambda - 1e-12 || to_pml < 0.5 * lambda - 1e-12)
    {
      throw InvalidInput("extract_r_t: probe closer than half a wavelength to slab or PML");
    }
  }
  const double face_in = -sol.direction * a, face_out = sol.direction * a;
  const Complex sca_in = scattered_field_at(sol, mesh, x_in) / sol.amplitude *
                         std::exp(-I * detail::discrete_phase(mesh, k, face_in, x_in));
  const Complex sca_out = scattered_field_at(sol, mesh, x_out) / sol.amplitude *
                          std::exp(-I * detail::discrete_phase(mesh, k, face_out, x_out));
  const Complex r = sca_in * std::exp(I * (k * a));
  const Complex t = 1.0 + sca_out * std::exp(-I * (k * a));
  return {r, t};
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_SCATTERING_HPP
