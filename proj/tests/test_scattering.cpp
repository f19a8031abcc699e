// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "langevin1d/greens.hpp"
#include "langevin1d/oracle.hpp"
#include "langevin1d/scattering.hpp"
#include "support.hpp"

using namespace langevin1d;
using langevin1d::test_support::case_medium;
using langevin1d::test_support::open_mesh;
using langevin1d::test_support::rel;

namespace
{

// 1 - |r|^2 - |t|^2 against the absorbed power k int chi_I |Phi_tot|^2.
std::pair<double, double> energy_balance(const Mesh1D &mesh, const MediumSpec &m, double k)
{
  const PlaneWaveSolution sol = solve_scattering(mesh, m, k, 1);
  const auto [r, t] = extract_r_t(sol, mesh);
  const QuadratureRule rule = slab_quadrature(mesh, 4);
  double absorbed = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q)
  {
    absorbed += rule.weights[q] * loss_density(m, rule.points[q], k) *
                std::norm(total_field_at(sol, mesh, rule.points[q]));
  }
  return {1.0 - std::norm(r) - std::norm(t), k * absorbed};
}

}  // namespace

TEST(IncidentField, UnitPlaneWave)
{
  EXPECT_NEAR(std::abs(incident_field(1, 500.0, 0.3)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(incident_field(-1, 500.0, 0.0) - 1.0), 0.0, 1e-15);
  const Complex a = incident_field(1, 500.0, 0.01), b = incident_field(-1, 500.0, -0.01);
  EXPECT_NEAR(std::abs(a - b), 0.0, 1e-15);
}

TEST(Scattering, VacuumHasNoScatteredField)
{
  const MediumSpec vac = MediumSpec::Vacuum();
  const Mesh1D mesh = open_mesh(vac, {0.0625}, 40.0);
  for (int dir : {1, -1})
  {
    const PlaneWaveSolution sol = solve_scattering(mesh, vac, 500.0, dir);
    double max_sca = 0.0;
    for (const Complex &v : sol.scattered_dofs)
    {
      max_sca = std::max(max_sca, std::abs(v));
    }
    EXPECT_LT(max_sca, 1e-8);
    for (double x : {-0.1, 0.0, 0.0625})
    {
      EXPECT_LT(std::abs(total_field_at(sol, mesh, x) - incident_field(dir, 500.0, x)), 1e-8);
    }
    const auto [r, t] = extract_r_t(sol, mesh);
    EXPECT_LT(std::abs(r), 1e-8);
    EXPECT_LT(std::abs(t - 1.0), 1e-8);
  }
}

TEST(Scattering, ReflectionTransmissionMatchOracle)
{
  for (double gamma : {50.0, 5.0})
  {
    const MediumSpec m = case_medium(gamma);
    const Mesh1D mesh = open_mesh(m, {}, 160.0);
    const PlaneWaveSolution sol = solve_scattering(mesh, m, 500.0, 1);
    const auto [r, t] = extract_r_t(sol, mesh);
    const auto [r0, t0] = oracle::tmm_reflection_transmission(m, 500.0, 1);
    const double scale = std::max(std::abs(r0), std::abs(t0));
    EXPECT_LT(std::abs(r - r0) / scale, 5e-3) << gamma;
    EXPECT_LT(std::abs(t - t0) / scale, 5e-3) << gamma;
    EXPECT_LT(rel(r, r0), 5e-3) << gamma;
    EXPECT_LT(std::norm(r) + std::norm(t), 1.0);
  }
}

TEST(Scattering, TotalFieldMatchesOracle)
{
  // Measured against the largest sampled oracle value: the far-side field is tiny.
  const MediumSpec m = case_medium(50.0);
  const Mesh1D mesh = open_mesh(m, {0.0, 0.0625}, 160.0);
  const PlaneWaveSolution sol = solve_scattering(mesh, m, 500.0, 1);
  EXPECT_LT(std::abs(total_field_at(sol, mesh, 0.0)), 0.1);
  double diff = 0.0, scale = 0.0;
  for (double x : {-0.03125, 0.0, 0.0625})
  {
    const Complex ref = oracle::tmm_field(m, 500.0, 1, x);
    diff = std::max(diff, std::abs(total_field_at(sol, mesh, x) - ref));
    scale = std::max(scale, std::abs(ref));
  }
  EXPECT_LT(diff / scale, 5e-3);
}

TEST(Scattering, EnergyBalance)
{
  for (double gamma : {50.0, 5.0})
  {
    const MediumSpec m = case_medium(gamma);
    // The balance compares two small numbers off resonance; it needs a fine mesh.
    const Mesh1D mesh = open_mesh(m, {}, 640.0);
    for (double k : {300.0, 450.0, 500.0, 620.0, 700.0})
    {
      const auto [lost, absorbed] = energy_balance(mesh, m, k);
      EXPECT_GT(lost, 0.0);
      EXPECT_LT(std::abs(lost - absorbed) / lost, 1e-2) << "gamma " << gamma << " k " << k;
    }
  }
}

TEST(Scattering, MirrorSymmetry)
{
  const MediumSpec m = case_medium(5.0);
  const Mesh1D mesh = open_mesh(m, {-0.0625, 0.0625}, 40.0);
  const HelmholtzProblem problem(mesh, m, 470.0);
  const PlaneWaveSolution plus = solve_scattering(problem, 1);
  const PlaneWaveSolution minus = solve_scattering(problem, -1);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < mesh.NumNodes(); ++i)
  {
    const double x = mesh.nodes[i];
    if (mesh.InPml(x) || mesh.InPml(-x))
    {
      continue;
    }
    worst = std::max(worst, std::abs(total_field_at(plus, mesh, x) -
                                     total_field_at(minus, mesh, -x)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Scattering, ScatteredFieldDecaysInPml)
{
  const MediumSpec m = case_medium(50.0);
  const Mesh1D mesh = open_mesh(m, {}, 40.0);
  const PlaneWaveSolution sol = solve_scattering(mesh, m, 350.0, 1);
  const double wall = std::max(std::abs(sol.scattered_dofs.front()),
                               std::abs(sol.scattered_dofs.back()));
  EXPECT_LT(wall, std::sqrt(1e-10));
}

TEST(Scattering, RejectsBadInput)
{
  const MediumSpec m = case_medium(50.0);
  const Mesh1D mesh = open_mesh(m, {}, 40.0);
  const PlaneWaveSolution sol = solve_scattering(mesh, m, 500.0, 1);
  EXPECT_THROW(total_field_at(sol, mesh, mesh.Right() - 1e-4), InvalidInput);
  EXPECT_THROW(solve_scattering(mesh, m, 500.0, 0), InvalidInput);
  const Mesh1D tight = build_mesh(m, 0.005, 40.0, 700.0, {0.05, 3.0, 1e-10}, {});
  EXPECT_THROW(extract_r_t(solve_scattering(tight, m, 500.0, 1), tight), InvalidInput);
}
