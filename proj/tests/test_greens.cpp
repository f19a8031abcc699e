// SPDX-License-Identifier: Apache-2.0

#include <numeric>

#include <gtest/gtest.h>

#include "langevin1d/greens.hpp"
#include "langevin1d/oracle.hpp"
#include "support.hpp"

using namespace langevin1d;
using langevin1d::test_support::case_medium;
using langevin1d::test_support::free_green;
using langevin1d::test_support::open_mesh;
using langevin1d::test_support::rel;

TEST(PointSource, VacuumSelfValue)
{
  const MediumSpec vac = MediumSpec::Vacuum();
  const Mesh1D mesh = open_mesh(vac, {0.0}, 40.0, 500.0);
  const FieldSolution g = solve_point_source(mesh, vac, 500.0, 0.0);
  EXPECT_LT(rel(g.At(mesh, 0.0), Complex(0.0, 1.0 / 1000.0)), 5e-3);
}

TEST(PointSource, VacuumQuarterWavePhase)
{
  const MediumSpec vac = MediumSpec::Vacuum();
  const double k = 500.0, quarter = 0.5 * pi / k;
  const Mesh1D mesh = open_mesh(vac, {0.0, quarter}, 40.0, 500.0);
  const FieldSolution g = solve_point_source(mesh, vac, k, 0.0);
  EXPECT_LT(rel(g.At(mesh, quarter), Complex(-1.0 / (2.0 * k), 0.0)), 5e-3);
}

TEST(PointSource, LayeredGreenFunctionMatchesOracle)
{
  const MediumSpec m = case_medium(50.0);
  const Mesh1D mesh = open_mesh(m, {0.0625}, 160.0);
  const FieldSolution g = solve_point_source(mesh, m, 500.0, 0.0625);
  for (double x : {0.0625, 0.03125, 0.0, -0.02})
  {
    EXPECT_LT(rel(g.At(mesh, x), oracle::tmm_green(m, 500.0, x, 0.0625)), 5e-3) << x;
  }
}

TEST(PointSource, RejectsNonNodeAndPmlSources)
{
  const MediumSpec m = case_medium(50.0);
  const Mesh1D mesh = open_mesh(m, {0.0}, 40.0);
  const double off_node = 0.5 * (mesh.nodes[10] + mesh.nodes[11]) + 1e-3 * mesh.ElementLength(10);
  EXPECT_THROW(solve_point_source(mesh, m, 500.0, off_node), InvalidInput);
  EXPECT_THROW(solve_point_source(mesh, m, 500.0, mesh.nodes[3]), InvalidInput);
  EXPECT_THROW(solve_point_source(mesh, m, 500.0, mesh.Left()), InvalidInput);
}

TEST(SampleSlab, VacuumTracesFreeSpace)
{
  const MediumSpec vac = MediumSpec::Vacuum();
  const Mesh1D mesh = open_mesh(vac, {0.0625}, 160.0);
  const GreensSamples g = sample_slab(mesh, vac, 450.0, 0.0625);
  for (std::size_t q = 0; q < g.values.size(); ++q)
  {
    EXPECT_LT(rel(g.values[q], free_green(450.0, 0.0625, g.quad_points[q])), 5e-3);
  }
  EXPECT_LT(rel(g.self_value, free_green(450.0, 0.0, 0.0)), 5e-3);
}

TEST(SampleSlab, WeightsCoverSlab)
{
  const MediumSpec m = case_medium(5.0);
  const Mesh1D mesh = open_mesh(m, {0.0}, 40.0);
  for (int ppe : {2, 4, 8})
  {
    const GreensSamples g = sample_slab(mesh, m, 500.0, 0.0, ppe);
    EXPECT_NEAR(std::accumulate(g.weights.begin(), g.weights.end(), 0.0), 0.0625, 1e-14);
    for (double x : g.quad_points)
    {
      EXPECT_LE(std::abs(x), 0.03125);
    }
  }
  EXPECT_THROW(sample_slab(mesh, m, 500.0, 0.0, 1), InvalidInput);
}

TEST(SampleSlab, ReciprocityAudit)
{
  const MediumSpec m = case_medium(5.0);
  const Mesh1D mesh = open_mesh(m, {0.0625}, 40.0);
  const HelmholtzProblem problem(mesh, m, 500.0);
  const FieldSolution forward = solve_point_source(problem, 0.0625);
  for (std::size_t node : {mesh.NumNodes() / 2, mesh.NumNodes() / 2 + 17, mesh.NumNodes() / 2 - 40})
  {
    const double xp = mesh.nodes[node];
    const FieldSolution reverse = solve_point_source(problem, xp);
    const Complex a = forward.At(mesh, xp), b = reverse.At(mesh, 0.0625);
    EXPECT_LT(std::abs(a - b) / std::abs(a), 1e-10) << xp;
  }
}

TEST(SampleSlab, PositiveLocalDensityOfStates)
{
  for (double gamma : {50.0, 5.0})
  {
    const MediumSpec m = case_medium(gamma);
    const Mesh1D mesh = open_mesh(m, {0.0, 0.02, 0.0625, 0.1}, 40.0);
    const HelmholtzProblem p300(mesh, m, 300.0), p500(mesh, m, 500.0), p700(mesh, m, 700.0);
    for (const HelmholtzProblem *p : {&p300, &p500, &p700})
    {
      for (double x : {0.0, 0.02, 0.0625, 0.1})
      {
        EXPECT_GT(solve_point_source(*p, x).At(mesh, x).imag(), 0.0);
      }
    }
  }
}
