// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_MICROMODES_HPP
#define LANGEVIN1D_MICROMODES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "langevin1d/core.hpp"
#include "langevin1d/medium.hpp"
#include "langevin1d/mesh.hpp"

// Coarse-grained microscopic model of the Lorentz slab: EM field + one polarization
// oscillator per slab element + a bath of oscillators per slab element. The field variable
// is the dual potential C with D = C', so that every coupling sits in the stiffness matrix
// and the closed system is the real symmetric pencil K v = omega^2 B v.
//
// Energy per slab element of length h (E = C' - omega_p Z):
//   (h/2) (C' - omega_p Z)^2 + (h/2) (omega_0^2 + Delta) Z^2
//   + (h/2) sum_b [nu_b^2 Y_b^2 - 2 g_b Z Y_b],    Delta = sum_b g_b^2 / nu_b^2
// Kinetic terms: (1/2) int Cdot^2 + (h/2) Zdot^2 + (h/2) sum_b Ydot_b^2.
// With g_b^2 = 2 gamma nu_b^2 dnu / pi the continuum bath yields -i gamma w, so that
// eliminating Z and Y gives eps(w) = 1 + omega_p^2 / (omega_0^2 - w^2 - i gamma w).
namespace langevin1d::micromodes
{

struct BathConfig
{
  int n_bins = 16;
  double nu_max = 1000.0;
  double box_length = 0.625;

  void Validate(const MediumSpec &medium) const
  {
    if (n_bins < 8)
    {
      throw InvalidInput("bath: n_bins must be at least 8");
    }
    if (!(nu_max > medium.omega_0))
    {
      throw InvalidInput("bath: nu_max must exceed omega_0");
    }
    if (!(box_length >= 4.0 * medium.SlabLength() - 1e-12))
    {
      throw InvalidInput("bath: box_length must be at least 4 slab lengths");
    }
  }
};

struct BathOscillator
{
  double nu;
  double coupling;
};

// Midpoint bins on (0, nu_max] plus one tail oscillator at sqrt(3) nu_max that matches
// the first two moments of the truncated continuum above nu_max.
inline std::vector<BathOscillator> bath_oscillators(const MediumSpec &medium,
                                                    const BathConfig &bath)
{
  std::vector<BathOscillator> out;
  const double dnu = bath.nu_max / bath.n_bins;
  const double density = 2.0 * medium.gamma / pi;
  for (int b = 0; b < bath.n_bins; ++b)
  {
    const double nu = (b + 0.5) * dnu;
    out.push_back({nu, std::sqrt(density * nu * nu * dnu)});
  }
  const double nu_t = std::sqrt(3.0) * bath.nu_max;
  out.push_back({nu_t, std::sqrt(density * 9.0 * std::pow(bath.nu_max, 3))});
  return out;
}

using SparseMatrix = Eigen::SparseMatrix<double>;

//
// Assembled pencil with its block layout: EM node dofs first, then per slab element
// [Z, Y_0 .. Y_{n-1}, Y_tail].
//
struct GevpSystem
{
  SparseMatrix K;
  SparseMatrix B;
  std::size_t num_em = 0;
  std::vector<std::size_t> slab_elements;
  std::vector<std::size_t> matter_offset;  // first matter dof of each slab element
  std::vector<BathOscillator> bath;
  double omega_p = 0.0;
  double bin_width = 0.0;
  Mesh1D mesh;

  std::size_t Size() const { return static_cast<std::size_t>(K.rows()); }
  std::size_t MatterPerElement() const { return bath.size() + 1; }
};

inline GevpSystem build_gevp(const Mesh1D &mesh, const MediumSpec &medium, const BathConfig &bath)
{
  if (mesh.HasPml())
  {
    throw InvalidInput("build_gevp: the closed-box pencil cannot contain PML elements");
  }
  medium.Validate();
  GevpSystem sys;
  sys.mesh = mesh;
  sys.omega_p = medium.omega_p;
  sys.num_em = mesh.NumNodes();
  const bool coupled = medium.omega_p > 0.0;
  if (coupled)
  {
    bath.Validate(medium);
    sys.bath = bath_oscillators(medium, bath);
    sys.bin_width = bath.nu_max / bath.n_bins;
  }
  std::size_t next = sys.num_em;
  for (std::size_t e = 0; e < mesh.NumElements(); ++e)
  {
    if (coupled && mesh.regions[e] == Region::Slab)
    {
      sys.slab_elements.push_back(e);
      sys.matter_offset.push_back(next);
      next += sys.MatterPerElement();
    }
  }

  std::vector<Eigen::Triplet<double>> kt, bt;
  for (std::size_t e = 0; e < mesh.NumElements(); ++e)
  {
    const double h = mesh.ElementLength(e);
    const auto i = static_cast<int>(e), j = static_cast<int>(e + 1);
    kt.emplace_back(i, i, 1.0 / h);
    kt.emplace_back(j, j, 1.0 / h);
    kt.emplace_back(i, j, -1.0 / h);
    kt.emplace_back(j, i, -1.0 / h);
    bt.emplace_back(i, i, h / 3.0);
    bt.emplace_back(j, j, h / 3.0);
    bt.emplace_back(i, j, h / 6.0);
    bt.emplace_back(j, i, h / 6.0);
  }
  double delta = 0.0;
  for (const auto &osc : sys.bath)
  {
    delta += osc.coupling * osc.coupling / (osc.nu * osc.nu);
  }
  const double wp = medium.omega_p, w0 = medium.omega_0;
  for (std::size_t s = 0; s < sys.slab_elements.size(); ++s)
  {
    const std::size_t e = sys.slab_elements[s];
    const double h = mesh.ElementLength(e);
    const auto z = static_cast<int>(sys.matter_offset[s]);
    const auto i = static_cast<int>(e), j = static_cast<int>(e + 1);
    // -(C_{e+1} - C_e) omega_p Z cross term.
    kt.emplace_back(i, z, wp);
    kt.emplace_back(z, i, wp);
    kt.emplace_back(j, z, -wp);
    kt.emplace_back(z, j, -wp);
    kt.emplace_back(z, z, h * (wp * wp + w0 * w0 + delta));
    bt.emplace_back(z, z, h);
    for (std::size_t b = 0; b < sys.bath.size(); ++b)
    {
      const auto y = z + 1 + static_cast<int>(b);
      kt.emplace_back(y, y, h * sys.bath[b].nu * sys.bath[b].nu);
      kt.emplace_back(z, y, -h * sys.bath[b].coupling);
      kt.emplace_back(y, z, -h * sys.bath[b].coupling);
      bt.emplace_back(y, y, h);
    }
  }
  const auto n = static_cast<Eigen::Index>(next);
  sys.K.resize(n, n);
  sys.B.resize(n, n);
  sys.K.setFromTriplets(kt.begin(), kt.end());
  sys.B.setFromTriplets(bt.begin(), bt.end());
  return sys;
}

namespace detail
{

// Per-element chi from eliminating the matter blocks of (K - z B) at complex z.
inline std::vector<Complex> element_susceptibility(const GevpSystem &sys, Complex z)
{
  using CSparse = Eigen::SparseMatrix<Complex>;
  const auto ne = static_cast<Eigen::Index>(sys.num_em);
  const Eigen::Index nm = static_cast<Eigen::Index>(sys.Size()) - ne;
  std::vector<Complex> chi;
  if (nm == 0)
  {
    return chi;
  }
  CSparse A = (sys.K.cast<Complex>() - z * sys.B.cast<Complex>());
  CSparse Amm = A.bottomRightCorner(nm, nm);
  CSparse Ama = A.bottomLeftCorner(nm, ne);
  Eigen::SparseLU<CSparse> lu;
  lu.compute(Amm);
  if (lu.info() != Eigen::Success)
  {
    throw SingularOperator("effective_susceptibility: matter block is singular");
  }
  for (std::size_t s = 0; s < sys.slab_elements.size(); ++s)
  {
    const std::size_t e = sys.slab_elements[s];
    const double h = sys.mesh.ElementLength(e);
    // D(e, e+1) = -K_{e,m} A_mm^{-1} K_{m,e+1}; element contribution is d_e g g^T / h.
    Eigen::VectorXcd col = Ama.col(static_cast<Eigen::Index>(e + 1));
    Eigen::VectorXcd sol = lu.solve(col);
    Eigen::VectorXcd row = Ama.col(static_cast<Eigen::Index>(e));
    const Complex d_entry = -(row.transpose() * sol)(0);
    const Complex d = -h * d_entry;
    const Complex eps = 1.0 / (1.0 + d);
    chi.push_back(eps - 1.0);
  }
  return chi;
}

inline Complex mean(const std::vector<Complex> &v)
{
  Complex s = 0.0;
  for (const Complex &x : v)
  {
    s += x;
  }
  return v.empty() ? Complex{} : s / static_cast<double>(v.size());
}

}  // namespace detail

// Effective slab susceptibility of the discrete model at real omega. The matter blocks are
// eliminated at complex frequencies omega + i j delta (delta = 1.5 bin widths, j = 1..3),
// where the finite bath is resolved, and 1/chi (quadratic in frequency for the target
// model) is extrapolated to delta -> 0.
inline Complex effective_susceptibility(const GevpSystem &sys, double omega)
{
  if (sys.slab_elements.empty())
  {
    return 0.0;
  }
  for (const auto &osc : sys.bath)
  {
    if (std::abs(omega - osc.nu) <= 1e-9 * osc.nu)
    {
      throw InvalidInput("effective_susceptibility: omega coincides with a bath bin");
    }
  }
  const double delta = 1.5 * sys.bin_width;
  Complex inv[3];
  for (int j = 1; j <= 3; ++j)
  {
    const Complex w(omega, j * delta);
    inv[j - 1] = 1.0 / detail::mean(detail::element_susceptibility(sys, w * w));
  }
  return 1.0 / (3.0 * inv[0] - 3.0 * inv[1] + inv[2]);
}

//
// Eigenmodes of the closed system in a frequency band, metric-normalized (v^T B v = 1).
// e_fields(m, i) holds E_m(x_i) / omega_m at node i.
//
struct ModeSet
{
  std::vector<double> frequencies;
  Eigen::MatrixXd e_fields;
  std::vector<double> nodes;
  double orthonormality_residual = 0.0;
  double max_imag_eigenvalue = 0.0;

  std::size_t Size() const { return frequencies.size(); }

  double FieldAt(std::size_t m, double x) const
  {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t e = static_cast<std::size_t>(it - nodes.begin());
    e = std::clamp<std::size_t>(e == 0 ? 0 : e - 1, 0, nodes.size() - 2);
    const double t = (x - nodes[e]) / (nodes[e + 1] - nodes[e]);
    const auto row = static_cast<Eigen::Index>(m);
    return (1.0 - t) * e_fields(row, static_cast<Eigen::Index>(e)) +
           t * e_fields(row, static_cast<Eigen::Index>(e + 1));
  }
};

inline ModeSet diagonalize(const GevpSystem &sys, double omega_lo, double omega_hi)
{
  const Eigen::MatrixXd K(sys.K), B(sys.B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(K, B);
  if (solver.info() != Eigen::Success)
  {
    throw SingularOperator("diagonalize: generalized eigensolver did not converge");
  }
  const Eigen::VectorXd &lambda = solver.eigenvalues();
  const Eigen::MatrixXd &V = solver.eigenvectors();
  const double lambda_max = lambda.cwiseAbs().maxCoeff();

  ModeSet modes;
  modes.nodes = sys.mesh.nodes;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index m = 0; m < lambda.size(); ++m)
  {
    if (lambda(m) <= 1e-10 * lambda_max)
    {
      continue;  // static (constant-potential) mode
    }
    const double w = std::sqrt(lambda(m));
    if (w >= omega_lo && w <= omega_hi)
    {
      keep.push_back(m);
      modes.frequencies.push_back(w);
    }
  }
  const Mesh1D &mesh = sys.mesh;
  const std::size_t nn = mesh.NumNodes();
  modes.e_fields.setZero(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(nn));
  std::vector<std::size_t> slab_index(mesh.NumElements(), SIZE_MAX);
  for (std::size_t s = 0; s < sys.slab_elements.size(); ++s)
  {
    slab_index[sys.slab_elements[s]] = s;
  }
  std::vector<double> elem(mesh.NumElements());
  for (std::size_t r = 0; r < keep.size(); ++r)
  {
    const auto v = V.col(keep[r]);
    for (std::size_t e = 0; e < mesh.NumElements(); ++e)
    {
      double E = (v(static_cast<Eigen::Index>(e + 1)) - v(static_cast<Eigen::Index>(e))) /
                 mesh.ElementLength(e);
      if (slab_index[e] != SIZE_MAX)
      {
        E -= sys.omega_p * v(static_cast<Eigen::Index>(sys.matter_offset[slab_index[e]]));
      }
      elem[e] = E / modes.frequencies[r];
    }
    // Interior nodes average the two adjacent elements; the walls are perfect conductors.
    for (std::size_t i = 1; i + 1 < nn; ++i)
    {
      modes.e_fields(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          0.5 * (elem[i - 1] + elem[i]);
    }
  }
  if (!keep.empty())
  {
    Eigen::MatrixXd Vk(V.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r)
    {
      Vk.col(static_cast<Eigen::Index>(r)) = V.col(keep[r]);
    }
    const Eigen::MatrixXd gram = Vk.transpose() * (B * Vk);
    modes.orthonormality_residual =
        (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  }
  return modes;
}

// Number of modes in [omega_a - eta, omega_a + eta].
inline std::size_t modes_in_window(const ModeSet &modes, double omega_a, double eta)
{
  return static_cast<std::size_t>(
      std::count_if(modes.frequencies.begin(), modes.frequencies.end(),
                    [&](double w) { return std::abs(w - omega_a) <= eta; }));
}

// Lorentzian-smoothed golden-rule rate (|d| = hbar = 1). Requires eta to span at least two
// local mode spacings, i.e. four modes inside [omega_a - eta, omega_a + eta].
inline double ser_modes(const ModeSet &modes, double x_a, double omega_a, double eta)
{
  if (!(eta > 0.0) || modes_in_window(modes, omega_a, eta) < 4)
  {
    throw InvalidInput("ser_modes: eta is below twice the local mode spacing");
  }
  double gamma = 0.0;
  for (std::size_t m = 0; m < modes.Size(); ++m)
  {
    const double wm = modes.frequencies[m];
    const double e = modes.FieldAt(m, x_a);
    const double dw = omega_a - wm;
    gamma += eta * wm * e * e / (dw * dw + eta * eta);
  }
  return gamma;
}

// Vacuum-box mode spacing pi / L in normalized units.
inline double box_mode_spacing(double box_length) { return pi / box_length; }

}  // namespace langevin1d::micromodes

#endif  // LANGEVIN1D_MICROMODES_HPP
