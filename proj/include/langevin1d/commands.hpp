// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_COMMANDS_HPP
#define LANGEVIN1D_COMMANDS_HPP

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "langevin1d/compare.hpp"
#include "langevin1d/config.hpp"
#include "langevin1d/csv.hpp"
#include "langevin1d/identities.hpp"
#include "langevin1d/purcell.hpp"

// Subcommands of the command-line tool. Each returns the process exit code.
namespace langevin1d
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

namespace detail
{

inline Metadata run_metadata(const std::string &command, const RunConfig &config)
{
  Metadata meta{{"tool", std::string("langevin1d ") + kVersion},
                {"command", command},
                {"case", config.case_name}};
  for (const auto &[key, value] : echo_config(config))
  {
    meta.push_back({"config", key + " = " + value});
  }
  return meta;
}

inline std::ofstream open_output(const std::string &path)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
  {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  return os;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string fmt(const char *f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

// Mesh for oracle comparisons: both preset atom positions plus the configured one.
inline Mesh1D oracle_mesh(const SweepConfig &s, std::vector<double> &points)
{
  points = {kAtomA, kAtomB};
  if (s.x_a != kAtomA && s.x_a != kAtomB)
  {
    points.push_back(s.x_a);
  }
  SweepConfig widest = s;
  widest.x_a = std::max(std::abs(s.x_a), kAtomB);
  return build_mesh(s.medium, widest.Padding(), s.ppw, s.KMax(), s.Pml(), points);
}

}  // namespace detail

inline int cmd_sweep(const RunConfig &config, std::ostream &log)
{
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult result;
  try
  {
    result = sweep(config.sweep);
  }
  catch (const SweepError &e)
  {
    log << "sweep failed " << e.what() << '\n';
    return kExitFailure;
  }
  Metadata meta = detail::run_metadata("sweep", config);
  meta.push_back({"mesh_nodes", std::to_string(result.mesh_nodes)});
  meta.push_back({"mesh_dofs", std::to_string(result.mesh_dofs)});
  meta.push_back({"max_element_length", format_number(result.max_element_length)});
  if (result.modes_dofs)
  {
    meta.push_back({"modes_dofs", std::to_string(result.modes_dofs)});
  }
  meta.push_back({"wall_time_s", detail::fmt("%.3f", detail::seconds_since(t0))});
  std::ofstream os = detail::open_output(config.output.path);
  write_spectrum(os, result.records, meta);
  log << "wrote " << result.records.size() << " rows to " << config.output.path << '\n';
  return kExitOk;
}

inline int cmd_check_identities(const RunConfig &config, std::ostream &log)
{
  const IdentitiesConfig &ic = config.identities;
  const SweepConfig &s = config.sweep;
  SweepConfig mesh_config = s;
  mesh_config.omega_min = std::min(s.omega_min, *std::min_element(ic.frequencies.begin(),
                                                                   ic.frequencies.end()));
  mesh_config.omega_max = std::max(s.KMax(), *std::max_element(ic.frequencies.begin(),
                                                                ic.frequencies.end()));
  mesh_config.count = 2;
  const double obs[] = {s.x_a};
  mesh_config.ppw = ic.dense_ppw;
  const Mesh1D mesh = ic.closed_box
                          ? build_box_mesh(s.medium, s.modes.bath.box_length, ic.dense_ppw,
                                           mesh_config.KMax(), obs)
                          : mesh_config.BuildMesh();
  mesh_config.ppw = ic.tec_ppw;
  const Mesh1D fine = ic.closed_box ? mesh : mesh_config.BuildMesh();
  log << "dense mesh: " << mesh.NumDofs() << " dofs at ppw " << ic.dense_ppw
      << "; thermal balance mesh: " << fine.NumDofs() << " dofs at ppw " << ic.tec_ppw << '\n';
  MediumSpec vacuum = s.medium;
  vacuum.omega_p = 0.0;

  bool ok = true;
  log << "       k   ddgt_residual  pass   lossless_residual  pass   tec_residual  pass\n";
  for (double k : ic.frequencies)
  {
    IdentityReport rep;
    rep.k = k;
    std::string lossless_status, tec_status;
    try
    {
      rep.ddgt_residual = check_discrete_ddgt(assemble(mesh, s.medium, k), ic.dof_cap);
      if (ic.closed_box)
      {
        lossless_status = "skipped (closed box, degenerate)";
        tec_status = "skipped (closed box)";
      }
      else
      {
        rep.lossless_identity_residual =
            check_lossless_identity_failure(mesh, vacuum, k, ic.dof_cap);
        rep.tec_residual = check_thermal_equilibrium(fine, s.medium, k, s.x_a, s.x_a).residual;
      }
    }
    catch (const std::exception &e)
    {
      log << "identity check failed at k = " << k << ": " << e.what() << '\n';
      return kExitFailure;
    }
    const bool ddgt_ok = rep.ddgt_residual < ic.ddgt_threshold;
    ok = ok && ddgt_ok;
    char line[256];
    std::snprintf(line, sizeof(line), "%8.2f  %14.3e  %-4s", k, rep.ddgt_residual,
                  ddgt_ok ? "ok" : "FAIL");
    log << line;
    if (ic.closed_box)
    {
      log << "   " << lossless_status << "   " << tec_status << '\n';
      continue;
    }
    const bool lossless_ok = rep.lossless_identity_residual > ic.lossless_threshold;
    const bool tec_ok = rep.tec_residual < ic.tec_threshold;
    ok = ok && lossless_ok && tec_ok;
    std::snprintf(line, sizeof(line), "   %17.3e  %-4s   %12.3e  %-4s\n",
                  rep.lossless_identity_residual, lossless_ok ? "ok" : "FAIL", rep.tec_residual,
                  tec_ok ? "ok" : "FAIL");
    log << line;
  }
  log << (ok ? "all identity checks passed\n" : "identity checks FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_oracle_compare(const RunConfig &config, std::ostream &log)
{
  const SweepConfig &s = config.sweep;
  std::vector<double> points;
  const Mesh1D mesh = detail::oracle_mesh(s, points);
  SweepConfig grid_config = s;
  grid_config.count = config.oracle.count;
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (double k : grid_config.Grid())
  {
    OracleResiduals res;
    try
    {
      res = compare_with_oracle(mesh, s.medium, k, points, s.quad_points);
    }
    catch (const std::exception &e)
    {
      log << "oracle comparison failed at k = " << k << ": " << e.what() << '\n';
      return kExitFailure;
    }
    rows.push_back({k, res.reflection_transmission, res.fields, res.green});
    worst = std::max(worst, res.Max());
  }
  Metadata meta = detail::run_metadata("oracle-compare", config);
  meta.push_back({"mesh_nodes", std::to_string(mesh.NumNodes())});
  std::ofstream os = detail::open_output(config.output.residuals);
  write_table(os, {"omega", "rt_residual", "field_residual", "green_residual"}, rows, meta);
  const bool ok = worst < config.oracle.threshold;
  log << "max oracle residual " << format_number(worst) << " (threshold "
      << format_number(config.oracle.threshold) << "): " << (ok ? "ok" : "FAIL") << '\n';
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_modes(const RunConfig &config, std::ostream &log)
{
  const auto t0 = std::chrono::steady_clock::now();
  const SweepConfig &s = config.sweep;
  try
  {
    s.modes.bath.Validate(s.medium);
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(std::string("config: ") + e.what());
  }
  micromodes::ModeSet modes;
  std::vector<PurcellRecord> records;
  double chi_error = 0.0;
  std::size_t dofs = 0;
  try
  {
    const double obs[] = {s.x_a};
    const Mesh1D box =
        build_box_mesh(s.medium, s.modes.bath.box_length, s.modes.ppw, s.KMax(), obs);
    const micromodes::GevpSystem sys = micromodes::build_gevp(box, s.medium, s.modes.bath);
    dofs = sys.Size();
    for (double w : s.Grid())
    {
      const Complex target = susceptibility(s.medium, w);
      if (std::abs(target) > 0.0)
      {
        chi_error = std::max(chi_error, std::abs(micromodes::effective_susceptibility(sys, w) -
                                                 target) / std::abs(target));
      }
    }
    modes = micromodes::diagonalize(sys, 0.0, std::numeric_limits<double>::infinity());
    for (double w : s.Grid())
    {
      PurcellRecord rec;
      rec.omega_a = w;
      rec.x_a = s.x_a;
      rec.pf_modes = micromodes::ser_modes(modes, s.x_a, w, s.modes.Eta()) / w;
      records.push_back(rec);
    }
  }
  catch (const std::exception &e)
  {
    log << "modes failed: " << e.what() << '\n';
    return kExitFailure;
  }
  Metadata meta = detail::run_metadata("modes", config);
  meta.push_back({"gevp_dofs", std::to_string(dofs)});
  meta.push_back({"eta", format_number(s.modes.Eta())});
  meta.push_back({"chi_calibration_error", format_number(chi_error)});
  meta.push_back({"orthonormality_residual", format_number(modes.orthonormality_residual)});
  meta.push_back({"wall_time_s", detail::fmt("%.3f", detail::seconds_since(t0))});
  {
    std::ofstream os = detail::open_output(config.output.path);
    write_spectrum(os, records, meta);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t m = 0; m < modes.Size(); ++m)
  {
    rows.push_back({static_cast<double>(m), modes.frequencies[m]});
  }
  std::ofstream os = detail::open_output(config.output.spectrum);
  write_table(os, {"index", "omega_m"}, rows, meta);
  log << dofs << " dofs, " << modes.Size() << " modes, chi calibration error "
      << format_number(chi_error) << '\n';
  return kExitOk;
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_COMMANDS_HPP
