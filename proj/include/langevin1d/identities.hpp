// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_IDENTITIES_HPP
#define LANGEVIN1D_IDENTITIES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "langevin1d/greens.hpp"
#include "langevin1d/scattering.hpp"

namespace langevin1d
{

struct IdentityReport
{
  double k = 0.0;
  double ddgt_residual = 0.0;
  double lossless_identity_residual = 0.0;
  double tec_residual = 0.0;
};

namespace detail
{

inline Eigen::MatrixXd dense_part(const SymTridiagonal &A, bool imag)
{
  const auto n = static_cast<Eigen::Index>(A.Size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const Complex d = A.diag[static_cast<std::size_t>(i)];
    out(i, i) = imag ? d.imag() : d.real();
    if (i + 1 < n)
    {
      const Complex o = A.off[static_cast<std::size_t>(i)];
      out(i, i + 1) = out(i + 1, i) = imag ? o.imag() : o.real();
    }
  }
  return out;
}

//
// Dense G = L^{-1} and the two quadratic forms G Im(S) G^H and G Im(M) G^H. Im(S) and
// Im(M) vanish outside the PML and the lossy slab, so the forms only need those columns
// of G.
//
struct DenseGreenForms
{
  Eigen::MatrixXcd G;
  Eigen::MatrixXcd stiffness_form;
  Eigen::MatrixXcd mass_form;
};

inline std::vector<Eigen::Index> imaginary_support(const SymTridiagonal &A)
{
  std::vector<Eigen::Index> rows;
  const std::size_t n = A.Size();
  for (std::size_t i = 0; i < n; ++i)
  {
    const bool lower = i > 0 && A.off[i - 1].imag() != 0.0;
    const bool upper = i + 1 < n && A.off[i].imag() != 0.0;
    if (A.diag[i].imag() != 0.0 || lower || upper)
    {
      rows.push_back(static_cast<Eigen::Index>(i));
    }
  }
  return rows;
}

inline Eigen::MatrixXcd imaginary_form(const Eigen::MatrixXcd &G, const SymTridiagonal &A)
{
  const std::vector<Eigen::Index> support = imaginary_support(A);
  const Eigen::MatrixXd D = dense_part(A, true);
  const auto p = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd Gp(G.rows(), p);
  Eigen::MatrixXd Dp(p, p);
  for (Eigen::Index a = 0; a < p; ++a)
  {
    Gp.col(a) = G.col(support[a]);
    for (Eigen::Index b = 0; b < p; ++b)
    {
      Dp(a, b) = D(support[a], support[b]);
    }
  }
  return Gp * Dp.cast<Complex>() * Gp.adjoint();
}

// Columns of L^{-1} from tridiagonal solves.
inline Eigen::MatrixXcd dense_inverse(const SystemMatrices &system)
{
  const Factorization fact = factorize(system);
  const std::size_t n = system.NumDofs();
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd G(nn, nn);
  ComplexVector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
  {
    e[j] = 1.0;
    const ComplexVector col = fact.Solve(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
  }
  return G;
}

inline DenseGreenForms dense_green_forms(const SystemMatrices &system, std::size_t dof_cap)
{
  const std::size_t n = system.NumDofs();
  if (n > dof_cap)
  {
    throw InvalidInput("identity check: dof count exceeds the dense-inverse cap");
  }
  DenseGreenForms out;
  out.G = dense_inverse(system);
  out.stiffness_form = imaginary_form(out.G, system.stiffness);
  out.mass_form = imaginary_form(out.G, system.mass);
  return out;
}

}  // namespace detail

// max|Im G + G Im(S) G^H - k^2 G Im(M) G^H| / max|Im G| with G = (S - k^2 M)^{-1}.
inline double check_discrete_ddgt(const SystemMatrices &system, std::size_t dof_cap = 4000)
{
  const auto forms = detail::dense_green_forms(system, dof_cap);
  const Eigen::MatrixXd imG = forms.G.imag();
  const double k2 = system.k * system.k;
  const Eigen::MatrixXcd R = imG.cast<Complex>() + forms.stiffness_form - k2 * forms.mass_form;
  const double scale = imG.cwiseAbs().maxCoeff();
  return scale > 0.0 ? R.cwiseAbs().maxCoeff() / scale : R.cwiseAbs().maxCoeff();
}

// Mass matrix assembled from the physical (non-PML) elements only; its imaginary part is
// the medium loss seen by the original noise model.
inline SymTridiagonal physical_mass(const Mesh1D &mesh, const MediumSpec &medium, double k)
{
  SymTridiagonal m(mesh.NumDofs());
  std::array<Complex, 3> ke, me;
  for (std::size_t e = 0; e < mesh.NumElements(); ++e)
  {
    if (mesh.regions[e] == Region::PmlLeft || mesh.regions[e] == Region::PmlRight)
    {
      continue;
    }
    detail::element_matrices(mesh, medium, k, e, ke, me);
    const auto d0 = mesh.DofOfNode(e), d1 = mesh.DofOfNode(e + 1);
    if (d0) m.diag[*d0] += me[0];
    if (d1) m.diag[*d1] += me[2];
    if (d0 && d1) m.off[*d0] += me[1];
  }
  return m;
}

namespace detail
{

// max over (i, j) in `pairs` of |Im G_ij - k^2 (G Im(M_phys) G^H)_ij|, and of |Im G_ij|.
inline std::pair<double, double> lossless_mismatch(const Mesh1D &mesh, const MediumSpec &medium,
                                                   double k, std::size_t dof_cap,
                                                   const std::vector<std::size_t> &dofs)
{
  const SystemMatrices system = assemble(mesh, medium, k);
  if (system.NumDofs() > dof_cap)
  {
    throw InvalidInput("identity check: dof count exceeds the dense-inverse cap");
  }
  const Eigen::MatrixXcd G = dense_inverse(system);
  const Eigen::MatrixXcd form = imaginary_form(G, physical_mass(mesh, medium, k));
  double num = 0.0, den = 0.0;
  for (std::size_t i : dofs)
  {
    for (std::size_t j : dofs)
    {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      const double imG = G(ii, jj).imag();
      num = std::max(num, std::abs(imG - k * k * form(ii, jj).real()));
      den = std::max(den, std::abs(imG));
    }
  }
  return {num, den};
}

}  // namespace detail

//
// Residual of the radiation-free identity Im G = k^2 G Im(M) G^H with Im(M) the physical
// medium loss, over dof pairs outside the PML. With radiation loss present the identity
// misses the boundary channel. Closed boxes have no radiation channel and are rejected.
//
inline double check_lossless_identity_failure(const Mesh1D &mesh, const MediumSpec &medium,
                                              double k, std::size_t dof_cap = 4000)
{
  if (!mesh.HasPml())
  {
    throw InvalidInput("lossless identity check: requires PML (closed boxes are degenerate)");
  }
  std::vector<std::size_t> dofs;
  for (std::size_t node = 0; node < mesh.NumNodes(); ++node)
  {
    const auto d = mesh.DofOfNode(node);
    if (d && !mesh.InPml(mesh.nodes[node]))
    {
      dofs.push_back(*d);
    }
  }
  const auto [num, den] = detail::lossless_mismatch(mesh, medium, k, dof_cap, dofs);
  return den > 0.0 ? num / den : num;
}

// Pointwise version at one node pair.
inline double lossless_identity_local_residual(const Mesh1D &mesh, const MediumSpec &medium,
                                               double k, double x_i, double x_j,
                                               std::size_t dof_cap = 4000)
{
  const auto ni = mesh.NodeIndex(x_i), nj = mesh.NodeIndex(x_j);
  if (!ni || !nj || !mesh.DofOfNode(*ni) || !mesh.DofOfNode(*nj))
  {
    throw InvalidInput("lossless identity check: positions must be interior mesh nodes");
  }
  const std::size_t di = *mesh.DofOfNode(*ni), dj = *mesh.DofOfNode(*nj);
  const SystemMatrices system = assemble(mesh, medium, k);
  const Factorization fact = factorize(system);
  ComplexVector e(system.NumDofs(), 0.0);
  e[dj] = 1.0;
  const ComplexVector gj = fact.Solve(e);
  e[dj] = 0.0;
  e[di] = 1.0;
  const ComplexVector gi = fact.Solve(e);
  // (G Im(M) G^H)_ij = g_i^T Im(M) conj(g_j) using the symmetry of G.
  const SymTridiagonal m = physical_mass(mesh, medium, k);
  Complex form = 0.0;
  for (std::size_t p = 0; p < m.Size(); ++p)
  {
    Complex row = m.diag[p].imag() * std::conj(gj[p]);
    if (p > 0) row += m.off[p - 1].imag() * std::conj(gj[p - 1]);
    if (p + 1 < m.Size()) row += m.off[p].imag() * std::conj(gj[p + 1]);
    form += gi[p] * row;
  }
  const double imG = gj[di].imag();
  return std::abs(imG - system.k * system.k * form.real()) / std::abs(imG);
}

//
// Both sides of the 1D thermal-equilibrium condition:
//   F = Im G(x_a, x_b) - k^2 int chi_I G(x_a, x') G*(x', x_b) dx'
//   BA = (1/(4k)) sum_{+-} Phi_tot(x_a) Phi_tot*(x_b) / amplitude^2
// The residual |F - BA| is taken relative to the largest of Im G, the medium term and BA.
//
struct ThermalBalance
{
  Complex surface_term;
  Complex boundary_term;
  double residual = 0.0;
};

inline ThermalBalance thermal_balance(const MediumSpec &medium, const GreensSamples &g_alpha,
                                      const GreensSamples &g_beta, Complex g_alpha_beta,
                                      Complex phi_plus_alpha, Complex phi_plus_beta,
                                      Complex phi_minus_alpha, Complex phi_minus_beta,
                                      double amplitude = kPlaneWaveAmplitude)
{
  const double k = g_alpha.k;
  Complex integral = 0.0;
  for (std::size_t q = 0; q < g_alpha.quad_points.size(); ++q)
  {
    const double chi_i = loss_density(medium, g_alpha.quad_points[q], k);
    integral += g_alpha.weights[q] * chi_i * g_alpha.values[q] * std::conj(g_beta.values[q]);
  }
  ThermalBalance out;
  out.surface_term = Complex(g_alpha_beta.imag(), 0.0) - k * k * integral;
  out.boundary_term = (phi_plus_alpha * std::conj(phi_plus_beta) +
                       phi_minus_alpha * std::conj(phi_minus_beta)) /
                      (4.0 * k * amplitude * amplitude);
  // Relative to the largest term of the balance: deep inside an opaque slab Im G and the
  // medium integral cancel to far below their own size.
  const double scale = std::max({std::abs(g_alpha_beta.imag()), std::abs(k * k * integral),
                                 std::abs(out.surface_term), std::abs(out.boundary_term)});
  out.residual = scale > 0.0 ? std::abs(out.surface_term - out.boundary_term) / scale : 0.0;
  return out;
}

inline ThermalBalance check_thermal_equilibrium(const HelmholtzProblem &problem, double x_alpha,
                                                double x_beta, int points_per_element = 4)
{
  const Mesh1D &mesh = *problem.mesh;
  const GreensSamples ga = sample_slab(problem, x_alpha, points_per_element);
  const GreensSamples gb =
      (x_beta == x_alpha) ? ga : sample_slab(problem, x_beta, points_per_element);
  const Complex g_ab =
      (x_beta == x_alpha) ? ga.self_value : solve_point_source(problem, x_beta).At(mesh, x_alpha);
  const PlaneWaveSolution plus = solve_scattering(problem, 1);
  const PlaneWaveSolution minus = solve_scattering(problem, -1);
  return thermal_balance(problem.medium, ga, gb, g_ab, total_field_at(plus, mesh, x_alpha),
                         total_field_at(plus, mesh, x_beta), total_field_at(minus, mesh, x_alpha),
                         total_field_at(minus, mesh, x_beta));
}

inline ThermalBalance check_thermal_equilibrium(const Mesh1D &mesh, const MediumSpec &medium,
                                                double k, double x_alpha, double x_beta)
{
  return check_thermal_equilibrium(HelmholtzProblem(mesh, medium, k), x_alpha, x_beta);
}

// A(x_a, x_b) = -2 Im G(x_a, x_b) from a solve with the source at x_b.
inline double spectral_function(const FieldSolution &g_source_b, const Mesh1D &mesh, double x_a)
{
  return -2.0 * g_source_b.At(mesh, x_a).imag();
}

// Mean photon number and Theta / (hbar omega) = n + 1/2 for k_B T / (hbar omega) = ratio.
inline std::pair<double, double> thermal_occupation(double temperature_ratio)
{
  if (!(temperature_ratio >= 0.0))
  {
    throw InvalidInput("thermal_occupation: temperature ratio must be non-negative");
  }
  const double n = (temperature_ratio == 0.0) ? 0.0 : 1.0 / std::expm1(1.0 / temperature_ratio);
  return {n, n + 0.5};
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_IDENTITIES_HPP
