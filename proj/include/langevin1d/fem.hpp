// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_FEM_HPP
#define LANGEVIN1D_FEM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "langevin1d/core.hpp"
#include "langevin1d/medium.hpp"
#include "langevin1d/mesh.hpp"
#include "langevin1d/quadrature.hpp"

namespace langevin1d
{

//
// Complex symmetric tridiagonal matrix: off[i] = A(i, i+1) = A(i+1, i).
//
struct SymTridiagonal
{
  ComplexVector diag;
  ComplexVector off;

  explicit SymTridiagonal(std::size_t n = 0) : diag(n), off(n > 0 ? n - 1 : 0) {}

  std::size_t Size() const { return diag.size(); }

  ComplexVector Apply(std::span<const Complex> x) const
  {
    const std::size_t n = Size();
    ComplexVector y(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      Complex v = diag[i] * x[i];
      if (i > 0)
      {
        v += off[i - 1] * x[i - 1];
      }
      if (i + 1 < n)
      {
        v += off[i] * x[i + 1];
      }
      y[i] = v;
    }
    return y;
  }

  // Infinity norm (max absolute row sum).
  double NormInf() const
  {
    double norm = 0.0;
    for (std::size_t i = 0; i < Size(); ++i)
    {
      double row = std::abs(diag[i]);
      row += (i > 0) ? std::abs(off[i - 1]) : 0.0;
      row += (i + 1 < Size()) ? std::abs(off[i]) : 0.0;
      norm = std::max(norm, row);
    }
    return norm;
  }
};

//
// Stiffness S_ij = int (1/s) phi_i' phi_j' and mass M_ij = int eps_r s phi_i phi_j for
// linear hat functions; Dirichlet nodes (outer PML walls) are eliminated.
//
struct SystemMatrices
{
  SymTridiagonal stiffness;
  SymTridiagonal mass;
  double k = 0.0;
  std::vector<std::size_t> dof_map;  // dof -> node

  std::size_t NumDofs() const { return dof_map.size(); }

  // L = S - k^2 M.
  SymTridiagonal Helmholtz() const
  {
    SymTridiagonal L(stiffness.Size());
    const double k2 = k * k;
    for (std::size_t i = 0; i < L.diag.size(); ++i)
    {
      L.diag[i] = stiffness.diag[i] - k2 * mass.diag[i];
    }
    for (std::size_t i = 0; i < L.off.size(); ++i)
    {
      L.off[i] = stiffness.off[i] - k2 * mass.off[i];
    }
    return L;
  }
};

namespace detail
{

inline const QuadratureRule &gauss4()
{
  static const QuadratureRule rule = gauss_legendre(4);
  return rule;
}

// Element matrices as {K00, K01, K11} and {M00, M01, M11}.
inline void element_matrices(const Mesh1D &mesh, const MediumSpec &medium, double k,
                             std::size_t e, std::array<Complex, 3> &ke,
                             std::array<Complex, 3> &me)
{
  const double x0 = mesh.nodes[e], x1 = mesh.nodes[e + 1], h = x1 - x0;
  const Region region = mesh.regions[e];
  const Complex eps = (region == Region::Slab) ? 1.0 + susceptibility(medium, k) : 1.0;
  if (region == Region::Vacuum || region == Region::Slab)
  {
    ke = {1.0 / h, -1.0 / h, 1.0 / h};
    me = {eps * h / 3.0, eps * h / 6.0, eps * h / 3.0};
    return;
  }
  ke = {0.0, 0.0, 0.0};
  me = {0.0, 0.0, 0.0};
  const QuadratureRule rule = map_rule(gauss4(), x0, x1);
  for (std::size_t q = 0; q < rule.points.size(); ++q)
  {
    const double x = rule.points[q], w = rule.weights[q];
    const Complex s = stretch_factor(mesh, x, k);
    const double p0 = (x1 - x) / h, p1 = (x - x0) / h;
    const Complex kw = w / (s * h * h);
    ke[0] += kw;
    ke[1] -= kw;
    ke[2] += kw;
    const Complex mw = w * eps * s;
    me[0] += mw * p0 * p0;
    me[1] += mw * p0 * p1;
    me[2] += mw * p1 * p1;
  }
}

}  // namespace detail

inline SystemMatrices assemble(const Mesh1D &mesh, const MediumSpec &medium, double k)
{
  if (!(k > 0.0))
  {
    throw InvalidInput("assemble: k must be positive");
  }
  SystemMatrices sys;
  sys.k = k;
  for (std::size_t i = 0; i < mesh.NumNodes(); ++i)
  {
    if (mesh.DofOfNode(i))
    {
      sys.dof_map.push_back(i);
    }
  }
  const std::size_t n = sys.dof_map.size();
  sys.stiffness = SymTridiagonal(n);
  sys.mass = SymTridiagonal(n);
  std::array<Complex, 3> ke, me;
  for (std::size_t e = 0; e < mesh.NumElements(); ++e)
  {
    detail::element_matrices(mesh, medium, k, e, ke, me);
    const auto d0 = mesh.DofOfNode(e), d1 = mesh.DofOfNode(e + 1);
    if (d0)
    {
      sys.stiffness.diag[*d0] += ke[0];
      sys.mass.diag[*d0] += me[0];
    }
    if (d1)
    {
      sys.stiffness.diag[*d1] += ke[2];
      sys.mass.diag[*d1] += me[2];
    }
    if (d0 && d1)
    {
      sys.stiffness.off[*d0] += ke[1];
      sys.mass.off[*d0] += me[1];
    }
  }
  return sys;
}

//
// LU factorization of a tridiagonal matrix with partial pivoting (second superdiagonal
// fill-in from row interchanges). Solve() is const and safe to call concurrently.
//
class Factorization
{
public:
  explicit Factorization(const SymTridiagonal &A, double pivot_floor = 1e-14)
    : n_(A.Size()), d_(A.diag), dl_(A.off), du_(A.off), du2_(n_ > 1 ? n_ - 2 : 0),
      ipiv_(n_, 0)
  {
    for (std::size_t i = 0; i < n_; ++i)
    {
      ipiv_[i] = i;
    }
    const double tol = pivot_floor * A.NormInf();
    for (std::size_t i = 0; i + 1 < n_; ++i)
    {
      if (std::abs(d_[i]) >= std::abs(dl_[i]))
      {
        if (std::abs(d_[i]) > 0.0)
        {
          const Complex fact = dl_[i] / d_[i];
          dl_[i] = fact;
          d_[i + 1] -= fact * du_[i];
        }
      }
      else
      {
        const Complex fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const Complex temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_)
        {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        ipiv_[i] = i + 1;
      }
    }
    for (std::size_t i = 0; i < n_; ++i)
    {
      if (!(std::abs(d_[i]) > tol))
      {
        throw SingularOperator("factorize: pivot below floor; operator is singular");
      }
    }
  }

  std::size_t Size() const { return n_; }

  ComplexVector Solve(std::span<const Complex> rhs) const
  {
    if (rhs.size() != n_)
    {
      throw InvalidInput("solve: right-hand side length does not match dof count");
    }
    ComplexVector b(rhs.begin(), rhs.end());
    if (n_ == 0)
    {
      return b;
    }
    for (std::size_t i = 0; i + 1 < n_; ++i)
    {
      if (ipiv_[i] == i)
      {
        b[i + 1] -= dl_[i] * b[i];
      }
      else
      {
        const Complex temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1)
    {
      b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    }
    for (std::size_t ii = n_; ii-- > 2;)
    {
      const std::size_t i = ii - 2;
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
    return b;
  }

private:
  std::size_t n_;
  ComplexVector d_, dl_, du_, du2_;
  std::vector<std::size_t> ipiv_;
};

inline Factorization factorize(const SystemMatrices &system)
{
  return Factorization(system.Helmholtz());
}

inline ComplexVector solve(const Factorization &fact, std::span<const Complex> rhs)
{
  return fact.Solve(rhs);
}

// Linear interpolation of a dof vector; eliminated Dirichlet nodes read as zero.
inline Complex evaluate_field(const Mesh1D &mesh, std::span<const Complex> dofs, double x)
{
  if (dofs.size() != mesh.NumDofs())
  {
    throw InvalidInput("evaluate_field: dof vector does not match mesh");
  }
  const std::size_t e = mesh.FindElement(x);
  const double x0 = mesh.nodes[e], x1 = mesh.nodes[e + 1];
  const auto d0 = mesh.DofOfNode(e), d1 = mesh.DofOfNode(e + 1);
  const Complex v0 = d0 ? dofs[*d0] : Complex{};
  const Complex v1 = d1 ? dofs[*d1] : Complex{};
  const double t = (x - x0) / (x1 - x0);
  return (1.0 - t) * v0 + t * v1;
}

//
// One frequency of the open-domain problem: assembled matrices plus their factorization,
// shared by every right-hand side at that frequency.
//
struct HelmholtzProblem
{
  const Mesh1D *mesh = nullptr;
  MediumSpec medium;
  SystemMatrices system;
  Factorization factorization;

  HelmholtzProblem(const Mesh1D &m, const MediumSpec &med, double k)
    : mesh(&m), medium(med), system(assemble(m, med, k)), factorization(factorize(system))
  {
  }

  double K() const { return system.k; }
};

}  // namespace langevin1d

#endif  // LANGEVIN1D_FEM_HPP
