// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_PURCELL_HPP
#define LANGEVIN1D_PURCELL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "langevin1d/greens.hpp"
#include "langevin1d/identities.hpp"
#include "langevin1d/micromodes.hpp"
#include "langevin1d/scattering.hpp"

// Purcell factors Gamma / Gamma_0 with hbar = eps_0 = c = |d| = 1, where the 1D free-space
// rate is Gamma_0 = omega_a.
namespace langevin1d
{

// Method 1: 2 k Im G(x_a, x_a).
inline double gamma_sfa(const GreensSamples &greens)
{
  return 2.0 * greens.k * greens.self_value.imag();
}

// Boundary-assisted part: (1/2) sum over k_x = +-k of |Phi_tot(x_a) / amplitude|^2.
inline double gamma_boundary(const PlaneWaveSolution &plus, const PlaneWaveSolution &minus,
                             const Mesh1D &mesh, double x_a)
{
  double sum = 0.0;
  for (const PlaneWaveSolution *sol : {&plus, &minus})
  {
    sum += std::norm(total_field_at(*sol, mesh, x_a) / sol->amplitude);
  }
  return 0.5 * sum;
}

// Medium-assisted part: 2 k^3 sum_q w_q chi_I(x'_q) |G(x_a, x'_q)|^2.
inline double gamma_medium(const GreensSamples &greens, const MediumSpec &medium)
{
  const double k = greens.k;
  double sum = 0.0;
  for (std::size_t q = 0; q < greens.quad_points.size(); ++q)
  {
    sum += greens.weights[q] * loss_density(medium, greens.quad_points[q], k) *
           std::norm(greens.values[q]);
  }
  return 2.0 * k * k * k * sum;
}

inline double gamma_modified_ln(double boundary, double medium) { return boundary + medium; }

// The original formalism keeps only the medium-assisted fields.
inline double gamma_original_ln(double medium) { return medium; }

struct PurcellRecord
{
  double omega_a = 0.0;
  double x_a = 0.0;
  std::optional<double> pf_sfa;
  std::optional<double> pf_b;
  std::optional<double> pf_m;
  std::optional<double> pf_modified_ln;
  std::optional<double> pf_original_ln;
  std::optional<double> pf_modes;
  std::optional<double> tec_residual;
};

struct MethodSet
{
  bool sfa = true;
  bool modified_ln = true;
  bool original_ln = true;
  bool modes = false;

  bool Any() const { return sfa || modified_ln || original_ln || modes; }
};

struct ModesConfig
{
  micromodes::BathConfig bath;
  double ppw = 15.0;
  // Lorentzian width; defaults to 4 vacuum-box mode spacings.
  std::optional<double> eta;

  double Eta() const
  {
    return eta.value_or(4.0 * micromodes::box_mode_spacing(bath.box_length));
  }
};

struct SweepConfig
{
  MediumSpec medium;
  double x_a = 0.0;
  double omega_min = 300.0;
  double omega_max = 700.0;
  int count = 101;
  double ppw = 40.0;
  std::optional<double> padding;
  PmlSpec pml{0.0, 3.0, 1e-10};  // thickness 0 selects the default
  int quad_points = 4;
  MethodSet methods;
  ModesConfig modes;
  int workers = 0;

  void Validate() const
  {
    medium.Validate();
    if (!(omega_min > 0.0) || count < 1 || (count > 1 && !(omega_min < omega_max)))
    {
      throw InvalidInput("sweep: need 0 < min < max and count >= 1");
    }
    if (!methods.Any())
    {
      throw InvalidInput("sweep: at least one method must be enabled");
    }
  }

  std::vector<double> Grid() const
  {
    std::vector<double> grid;
    for (int i = 0; i < count; ++i)
    {
      grid.push_back(count == 1 ? omega_min
                                : omega_min + (omega_max - omega_min) * i / (count - 1));
    }
    return grid;
  }

  double KMax() const { return count == 1 ? omega_min : omega_max; }
  double LambdaMax() const { return 2.0 * pi / omega_min; }

  // Vacuum padding between slab and PML: at least two of the longest wavelengths beyond
  // the atom.
  double Padding() const
  {
    const double beyond = std::max(0.0, std::abs(x_a) - medium.slab_half_length);
    return padding.value_or(beyond + 2.0 * LambdaMax());
  }

  PmlSpec Pml() const
  {
    PmlSpec p = pml;
    if (!(p.thickness > 0.0))
    {
      p.thickness = 2.0 * LambdaMax();
    }
    return p;
  }

  Mesh1D BuildMesh() const
  {
    const double obs[] = {x_a};
    return build_mesh(medium, Padding(), ppw, KMax(), Pml(), obs);
  }
};

// Worker count: LANGEVIN1D_WORKERS overrides, otherwise hardware concurrency.
inline int worker_count(int requested)
{
  if (const char *env = std::getenv("LANGEVIN1D_WORKERS"))
  {
    const int n = std::atoi(env);
    if (n > 0)
    {
      return n;
    }
  }
  if (requested > 0)
  {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

class SweepError : public std::runtime_error
{
public:
  SweepError(double omega, const std::string &what)
    : std::runtime_error("at omega_a = " + std::to_string(omega) + ": " + what), omega_(omega)
  {
  }
  double Omega() const { return omega_; }

private:
  double omega_;
};

// One factorization and three solves (two plane waves, one point source).
inline PurcellRecord evaluate_frequency(const Mesh1D &mesh, const SweepConfig &config, double k)
{
  const HelmholtzProblem problem(mesh, config.medium, k);
  PurcellRecord rec;
  rec.omega_a = k;
  rec.x_a = config.x_a;
  const GreensSamples greens = sample_slab(problem, config.x_a, config.quad_points);
  const PlaneWaveSolution plus = solve_scattering(problem, 1);
  const PlaneWaveSolution minus = solve_scattering(problem, -1);
  const double pf_b = gamma_boundary(plus, minus, mesh, config.x_a);
  const double pf_m = gamma_medium(greens, config.medium);
  if (config.methods.sfa)
  {
    rec.pf_sfa = gamma_sfa(greens);
  }
  if (config.methods.modified_ln)
  {
    rec.pf_b = pf_b;
    rec.pf_m = pf_m;
    rec.pf_modified_ln = gamma_modified_ln(pf_b, pf_m);
  }
  if (config.methods.original_ln)
  {
    rec.pf_original_ln = gamma_original_ln(pf_m);
  }
  const Complex phi_p = total_field_at(plus, mesh, config.x_a);
  const Complex phi_m = total_field_at(minus, mesh, config.x_a);
  rec.tec_residual = thermal_balance(config.medium, greens, greens, greens.self_value, phi_p,
                                     phi_p, phi_m, phi_m)
                         .residual;
  return rec;
}

struct ModesContext
{
  micromodes::ModeSet modes;
  double eta = 0.0;
  std::size_t dofs = 0;
};

inline ModesContext prepare_modes(const SweepConfig &config)
{
  const double obs[] = {config.x_a};
  const Mesh1D box = build_box_mesh(config.medium, config.modes.bath.box_length,
                                    config.modes.ppw, config.KMax(), obs);
  const micromodes::GevpSystem sys = micromodes::build_gevp(box, config.medium, config.modes.bath);
  ModesContext ctx;
  ctx.dofs = sys.Size();
  ctx.modes = micromodes::diagonalize(sys, 0.0, std::numeric_limits<double>::infinity());
  ctx.eta = config.modes.Eta();
  return ctx;
}

struct SweepResult
{
  std::vector<PurcellRecord> records;
  std::size_t mesh_nodes = 0;
  std::size_t mesh_dofs = 0;
  double max_element_length = 0.0;
  std::size_t modes_dofs = 0;
};

inline SweepResult sweep(const SweepConfig &config)
{
  config.Validate();
  const Mesh1D mesh = config.BuildMesh();
  const std::vector<double> grid = config.Grid();
  SweepResult result;
  result.mesh_nodes = mesh.NumNodes();
  result.mesh_dofs = mesh.NumDofs();
  result.max_element_length = mesh.MaxElementLength();
  result.records.resize(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]
  {
    for (std::size_t i = next++; i < grid.size(); i = next++)
    {
      try
      {
        result.records[i] = evaluate_frequency(mesh, config, grid[i]);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_workers = std::min<int>(worker_count(config.workers), static_cast<int>(grid.size()));
  if (n_workers <= 1)
  {
    work();
  }
  else
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w)
    {
      pool.emplace_back(work);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    if (errors[i])
    {
      try
      {
        std::rethrow_exception(errors[i]);
      }
      catch (const std::exception &e)
      {
        throw SweepError(grid[i], e.what());
      }
    }
  }
  if (config.methods.modes)
  {
    const ModesContext ctx = prepare_modes(config);
    result.modes_dofs = ctx.dofs;
    for (PurcellRecord &rec : result.records)
    {
      rec.pf_modes = micromodes::ser_modes(ctx.modes, config.x_a, rec.omega_a, ctx.eta) /
                     rec.omega_a;
    }
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const PurcellRecord &a, const PurcellRecord &b) { return a.omega_a < b.omega_a; });
  return result;
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_PURCELL_HPP
