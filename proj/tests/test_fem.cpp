// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <thread>

#include <gtest/gtest.h>

#include "langevin1d/fem.hpp"
#include "support.hpp"

using namespace langevin1d;
using langevin1d::test_support::free_green;
using langevin1d::test_support::open_mesh;

namespace
{

// Node i whose two neighbouring elements have the same length.
std::size_t uniform_interior_node(const Mesh1D &mesh)
{
  for (std::size_t i = mesh.NumNodes() / 3; i + 1 < mesh.NumNodes(); ++i)
  {
    if (std::abs(mesh.ElementLength(i - 1) - mesh.ElementLength(i)) < 1e-15)
    {
      return i;
    }
  }
  return 0;
}

double residual(const SymTridiagonal &L, const ComplexVector &x, const ComplexVector &b)
{
  const ComplexVector Lx = L.Apply(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
  {
    num = std::max(num, std::abs(Lx[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

ComplexVector random_vector(std::size_t n, unsigned seed)
{
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  ComplexVector v(n);
  for (auto &x : v)
  {
    x = {dist(rng), dist(rng)};
  }
  return v;
}

}  // namespace

TEST(Assemble, TextbookVacuumMatrices)
{
  const Mesh1D box = build_box_mesh(MediumSpec::Vacuum(), 0.25, 20.0, 500.0);
  const SystemMatrices sys = assemble(box, MediumSpec::Vacuum(), 500.0);
  const std::size_t i = uniform_interior_node(box);
  ASSERT_GT(i, 0u);
  const double h = box.ElementLength(i);
  EXPECT_NEAR(sys.stiffness.diag[i].real(), 2.0 / h, 1e-9 / h);
  EXPECT_NEAR(sys.stiffness.off[i].real(), -1.0 / h, 1e-9 / h);
  EXPECT_NEAR(sys.mass.diag[i].real(), 2.0 * h / 3.0, 1e-12 * h);
  EXPECT_NEAR(sys.mass.off[i].real(), h / 6.0, 1e-12 * h);
  EXPECT_EQ(sys.stiffness.diag[i].imag(), 0.0);
  EXPECT_EQ(sys.mass.off[i].imag(), 0.0);
}

TEST(Assemble, SlabMassScalesByPermittivity)
{
  const MediumSpec slab;  // gamma = 50
  const double obs[] = {0.0};
  const Mesh1D box = build_box_mesh(slab, 0.25, 20.0, 500.0, obs);
  const SystemMatrices with = assemble(box, slab, 500.0);
  const SystemMatrices without = assemble(box, MediumSpec::Vacuum(), 500.0);
  const std::size_t centre = *box.NodeIndex(0.0);
  const Complex ratio = with.mass.diag[centre] / without.mass.diag[centre];
  EXPECT_NEAR(ratio.real(), 1.0, 1e-12);
  EXPECT_NEAR(ratio.imag(), 0.4, 1e-12);
  EXPECT_EQ(with.stiffness.diag[centre], without.stiffness.diag[centre]);
}

TEST(Assemble, PmlMakesEntriesComplex)
{
  const Mesh1D mesh = open_mesh(MediumSpec::Vacuum(), {}, 40.0);
  const SystemMatrices sys = assemble(mesh, MediumSpec::Vacuum(), 500.0);
  EXPECT_NE(sys.stiffness.diag.front().imag(), 0.0);
  EXPECT_NE(sys.mass.diag.back().imag(), 0.0);
  double max_im_s = 0.0;
  for (const Complex &d : sys.stiffness.diag)
  {
    max_im_s = std::max(max_im_s, std::abs(d.imag()));
  }
  EXPECT_GT(max_im_s, 0.0);
  EXPECT_EQ(sys.NumDofs(), mesh.NumNodes() - 2);
}

TEST(Assemble, LosslessClosedBoxIsRealAndDefinite)
{
  MediumSpec lossless;
  lossless.gamma = 0.0;
  const Mesh1D box = build_box_mesh(lossless, 0.25, 20.0, 500.0);
  const SystemMatrices sys = assemble(box, lossless, 420.0);
  for (std::size_t i = 0; i < sys.NumDofs(); ++i)
  {
    EXPECT_EQ(sys.stiffness.diag[i].imag(), 0.0);
    EXPECT_EQ(sys.mass.diag[i].imag(), 0.0);
  }
  std::mt19937 rng(7);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 5; ++trial)
  {
    ComplexVector x(sys.NumDofs());
    for (auto &v : x)
    {
      v = dist(rng);
    }
    const ComplexVector Sx = sys.stiffness.Apply(x), Mx = sys.mass.Apply(x);
    double xsx = 0.0, xmx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      xsx += (x[i] * Sx[i]).real();
      xmx += (x[i] * Mx[i]).real();
    }
    EXPECT_GE(xsx, 0.0);
    EXPECT_GT(xmx, 0.0);
  }
}

TEST(Factorization, SolveResidualAndRoundTrip)
{
  const Mesh1D mesh = open_mesh(MediumSpec(), {0.0625}, 40.0);
  const SystemMatrices sys = assemble(mesh, MediumSpec(), 500.0);
  const SymTridiagonal L = sys.Helmholtz();
  const Factorization fact = factorize(sys);
  const ComplexVector b = random_vector(sys.NumDofs(), 3);
  EXPECT_LT(residual(L, solve(fact, b), b), 1e-12);

  const std::size_t j = sys.NumDofs() / 2;
  ComplexVector e(sys.NumDofs(), 0.0);
  e[j] = 1.0;
  const ComplexVector back = solve(fact, L.Apply(e));
  for (std::size_t i = 0; i < back.size(); ++i)
  {
    EXPECT_NEAR(std::abs(back[i] - e[i]), 0.0, 1e-12);
  }

  const ComplexVector zero = solve(fact, ComplexVector(sys.NumDofs(), 0.0));
  for (const Complex &z : zero)
  {
    EXPECT_EQ(z, Complex(0.0, 0.0));
  }
}

TEST(Factorization, ConcurrentSolvesAgree)
{
  const Mesh1D mesh = open_mesh(MediumSpec(), {}, 40.0);
  const SystemMatrices sys = assemble(mesh, MediumSpec(), 450.0);
  const Factorization fact = factorize(sys);
  const ComplexVector b = random_vector(sys.NumDofs(), 11);
  const ComplexVector ref = fact.Solve(b);
  std::vector<ComplexVector> out(4);
  {
    std::vector<std::jthread> pool;
    for (auto &o : out)
    {
      pool.emplace_back([&] { o = fact.Solve(b); });
    }
  }
  for (const auto &o : out)
  {
    EXPECT_EQ(o, ref);
  }
}

TEST(Factorization, SingularOperator)
{
  SystemMatrices sys;
  sys.k = 500.0;
  sys.stiffness = SymTridiagonal(4);
  sys.mass = SymTridiagonal(4);
  EXPECT_THROW(factorize(sys), SingularOperator);
}

TEST(Factorization, DimensionMismatch)
{
  const Mesh1D mesh = open_mesh(MediumSpec(), {}, 40.0);
  const Factorization fact = factorize(assemble(mesh, MediumSpec(), 500.0));
  EXPECT_THROW(solve(fact, ComplexVector(3)), InvalidInput);
}

TEST(Factorization, GreenMatrixIsSymmetric)
{
  const Mesh1D mesh = open_mesh(MediumSpec(), {0.0, 0.0625}, 40.0);
  const SystemMatrices sys = assemble(mesh, MediumSpec(), 530.0);
  const Factorization fact = factorize(sys);
  const std::size_t i = *mesh.DofOfNode(*mesh.NodeIndex(0.0));
  const std::size_t j = *mesh.DofOfNode(*mesh.NodeIndex(0.0625));
  ComplexVector ei(sys.NumDofs(), 0.0), ej(sys.NumDofs(), 0.0);
  ei[i] = 1.0;
  ej[j] = 1.0;
  const Complex gij = fact.Solve(ej)[i], gji = fact.Solve(ei)[j];
  EXPECT_LT(std::abs(gij - gji), 1e-13 * std::abs(gij));
}

TEST(PointLoad, MatchesFreeSpaceGreenFunction)
{
  const MediumSpec vac = MediumSpec::Vacuum();
  const double k = 500.0;
  const Mesh1D mesh = open_mesh(vac, {0.0}, 160.0);
  const Factorization fact = factorize(assemble(mesh, vac, k));
  ComplexVector rhs(mesh.NumDofs(), 0.0);
  rhs[*mesh.DofOfNode(*mesh.NodeIndex(0.0))] = 1.0;
  const ComplexVector g = fact.Solve(rhs);
  for (double x : {0.0, 0.01, -0.02, 0.03125, 0.05})
  {
    EXPECT_LT(test_support::rel(evaluate_field(mesh, g, x), free_green(k, x, 0.0)), 5e-3) << x;
  }
}

TEST(PointLoad, SecondOrderConvergence)
{
  const MediumSpec vac = MediumSpec::Vacuum();
  const double k = 500.0;
  std::vector<double> errors;
  for (double ppw : {20.0, 40.0, 80.0})
  {
    const Mesh1D mesh = open_mesh(vac, {0.0}, ppw);
    const Factorization fact = factorize(assemble(mesh, vac, k));
    ComplexVector rhs(mesh.NumDofs(), 0.0);
    rhs[*mesh.DofOfNode(*mesh.NodeIndex(0.0))] = 1.0;
    const ComplexVector g = fact.Solve(rhs);
    double err = 0.0;
    for (double x : {0.0, -0.03125, 0.03125})
    {
      err = std::max(err, std::abs(evaluate_field(mesh, g, x) - free_green(k, x, 0.0)));
    }
    errors.push_back(err);
  }
  EXPECT_NEAR(errors[0] / errors[1], 4.0, 0.5);
  EXPECT_NEAR(errors[1] / errors[2], 4.0, 0.5);
}

TEST(EvaluateField, InterpolationProperties)
{
  const Mesh1D mesh = open_mesh(MediumSpec(), {0.0}, 40.0);
  ComplexVector dofs(mesh.NumDofs());
  for (std::size_t i = 0; i < dofs.size(); ++i)
  {
    dofs[i] = Complex(static_cast<double>(i), -2.0 * static_cast<double>(i));
  }
  const std::size_t node = *mesh.NodeIndex(0.0);
  EXPECT_EQ(evaluate_field(mesh, dofs, 0.0), dofs[*mesh.DofOfNode(node)]);
  const double mid = 0.5 * (mesh.nodes[node] + mesh.nodes[node + 1]);
  const Complex avg =
      0.5 * (dofs[*mesh.DofOfNode(node)] + dofs[*mesh.DofOfNode(node + 1)]);
  EXPECT_NEAR(std::abs(evaluate_field(mesh, dofs, mid) - avg), 0.0, 1e-12);
  EXPECT_EQ(evaluate_field(mesh, dofs, mesh.Left()), Complex(0.0, 0.0));
  EXPECT_EQ(evaluate_field(mesh, dofs, mesh.Right()), Complex(0.0, 0.0));
  EXPECT_THROW(evaluate_field(mesh, dofs, mesh.Right() + 1.0), InvalidInput);
}
