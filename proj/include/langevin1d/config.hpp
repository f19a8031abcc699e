// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_CONFIG_HPP
#define LANGEVIN1D_CONFIG_HPP

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "langevin1d/purcell.hpp"

// Flat "key = value" run configuration with dotted sections. Lines starting with '#' are
// comments. A case preset sets the loss factor and atom position; explicit medium.gamma and
// atom.position keys override it.
namespace langevin1d
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct IdentitiesConfig
{
  std::vector<double> frequencies{300.0, 500.0, 700.0};
  double ddgt_threshold = 1e-10;
  double tec_threshold = 1e-2;
  double lossless_threshold = 0.5;
  std::size_t dof_cap = 4000;
  bool closed_box = false;
  // The dense identities run on a coarse mesh; the thermal balance is a discretization
  // check and uses a finer one.
  double dense_ppw = 20.0;
  double tec_ppw = 160.0;
};

struct OracleConfig
{
  int count = 11;
  double threshold = 5e-3;
};

struct OutputConfig
{
  std::string path = "purcell.csv";
  std::string residuals = "oracle_residuals.csv";
  std::string spectrum = "modes_spectrum.csv";
};

struct RunConfig
{
  std::string case_name = "custom";
  SweepConfig sweep;
  IdentitiesConfig identities;
  OracleConfig oracle;
  OutputConfig output;
};

inline constexpr double kAtomA = 0.0;
inline constexpr double kAtomB = 0.0625;

namespace detail
{

inline std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string &key, const std::string &v)
{
  errno = 0;
  char *end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE)
  {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return x;
}

inline int parse_int(const std::string &key, const std::string &v)
{
  const double x = parse_double(key, v);
  if (x != static_cast<int>(x))
  {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

inline bool parse_bool(const std::string &key, const std::string &v)
{
  if (v == "true" || v == "1" || v == "yes" || v == "on")
  {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off")
  {
    return false;
  }
  throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

inline std::vector<double> parse_list(const std::string &key, const std::string &v)
{
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    out.push_back(parse_double(key, trim(item)));
  }
  if (out.empty())
  {
    throw ConfigError("config: '" + key + "' expects a comma-separated list");
  }
  return out;
}

inline std::string format_double(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

// Presets 1A/1B/2A/2B: gamma 50 or 5, atom at the slab centre (A) or at x = L_s (B).
inline void apply_case(RunConfig &config, const std::string &name)
{
  if (name == "vacuum")
  {
    config.sweep.medium.omega_p = 0.0;
  }
  else if (name.size() == 2 && (name[0] == '1' || name[0] == '2') &&
           (name[1] == 'A' || name[1] == 'B'))
  {
    config.sweep.medium.gamma = (name[0] == '1') ? 50.0 : 5.0;
    config.sweep.x_a = (name[1] == 'A') ? kAtomA : kAtomB;
  }
  else if (name != "custom")
  {
    throw ConfigError("config: unknown case '" + name + "' (expected 1A, 1B, 2A, 2B, vacuum)");
  }
  config.case_name = name;
}

inline std::map<std::string, std::string> parse_pairs(std::istream &in)
{
  std::map<std::string, std::string> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty() || pairs.count(key))
    {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        (key.empty() ? " has an empty key" : " repeats key '" + key + "'"));
    }
    pairs[key] = detail::trim(line.substr(eq + 1));
  }
  return pairs;
}

inline void apply_key(RunConfig &c, const std::string &key, const std::string &v)
{
  using namespace detail;
  SweepConfig &s = c.sweep;
  if (key == "medium.omega_p") s.medium.omega_p = parse_double(key, v);
  else if (key == "medium.omega_0") s.medium.omega_0 = parse_double(key, v);
  else if (key == "medium.gamma") s.medium.gamma = parse_double(key, v);
  else if (key == "medium.slab_half_length") s.medium.slab_half_length = parse_double(key, v);
  else if (key == "atom.position")
  {
    if (v == "A") s.x_a = kAtomA;
    else if (v == "B") s.x_a = kAtomB;
    else s.x_a = parse_double(key, v);
  }
  else if (key == "sweep.min") s.omega_min = parse_double(key, v);
  else if (key == "sweep.max") s.omega_max = parse_double(key, v);
  else if (key == "sweep.count") s.count = parse_int(key, v);
  else if (key == "sweep.workers") s.workers = parse_int(key, v);
  else if (key == "mesh.ppw") s.ppw = parse_double(key, v);
  else if (key == "mesh.padding") s.padding = parse_double(key, v);
  else if (key == "mesh.pml_thickness") s.pml.thickness = parse_double(key, v);
  else if (key == "mesh.pml_order") s.pml.order = parse_double(key, v);
  else if (key == "mesh.pml_reflection") s.pml.target_reflection = parse_double(key, v);
  else if (key == "mesh.quad_points") s.quad_points = parse_int(key, v);
  else if (key == "methods.sfa") s.methods.sfa = parse_bool(key, v);
  else if (key == "methods.modified_ln") s.methods.modified_ln = parse_bool(key, v);
  else if (key == "methods.original_ln") s.methods.original_ln = parse_bool(key, v);
  else if (key == "methods.modes") s.methods.modes = parse_bool(key, v);
  else if (key == "modes.n_bins") s.modes.bath.n_bins = parse_int(key, v);
  else if (key == "modes.nu_max") s.modes.bath.nu_max = parse_double(key, v);
  else if (key == "modes.box_length") s.modes.bath.box_length = parse_double(key, v);
  else if (key == "modes.ppw") s.modes.ppw = parse_double(key, v);
  else if (key == "modes.eta") s.modes.eta = parse_double(key, v);
  else if (key == "identities.frequencies") c.identities.frequencies = parse_list(key, v);
  else if (key == "identities.ddgt_threshold") c.identities.ddgt_threshold = parse_double(key, v);
  else if (key == "identities.tec_threshold") c.identities.tec_threshold = parse_double(key, v);
  else if (key == "identities.lossless_threshold")
    c.identities.lossless_threshold = parse_double(key, v);
  else if (key == "identities.dof_cap") c.identities.dof_cap = parse_int(key, v);
  else if (key == "identities.closed_box") c.identities.closed_box = parse_bool(key, v);
  else if (key == "identities.dense_ppw") c.identities.dense_ppw = parse_double(key, v);
  else if (key == "identities.tec_ppw") c.identities.tec_ppw = parse_double(key, v);
  else if (key == "oracle.count") c.oracle.count = parse_int(key, v);
  else if (key == "oracle.threshold") c.oracle.threshold = parse_double(key, v);
  else if (key == "output.path") c.output.path = v;
  else if (key == "output.residuals") c.output.residuals = v;
  else if (key == "output.spectrum") c.output.spectrum = v;
  else throw ConfigError("config: unknown key '" + key + "'");
}

inline void validate(const RunConfig &c)
{
  try
  {
    c.sweep.Validate();
    if (c.sweep.methods.modes)
    {
      c.sweep.modes.bath.Validate(c.sweep.medium);
    }
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.oracle.count < 1 || c.identities.frequencies.empty())
  {
    throw ConfigError("config: oracle.count and identities.frequencies must be non-empty");
  }
  if (!(c.identities.dense_ppw >= 10.0) || !(c.identities.tec_ppw >= 10.0))
  {
    throw ConfigError("config: identities.dense_ppw and identities.tec_ppw must be at least 10");
  }
}

// case_override, when non-empty, replaces the file's "case" key.
inline RunConfig parse_config(std::istream &in, const std::string &case_override = {})
{
  auto pairs = parse_pairs(in);
  RunConfig config;
  std::string case_name = case_override;
  if (case_name.empty() && pairs.count("case"))
  {
    case_name = pairs["case"];
  }
  pairs.erase("case");
  if (!case_name.empty())
  {
    apply_case(config, case_name);
  }
  for (const auto &[key, value] : pairs)
  {
    apply_key(config, key, value);
  }
  validate(config);
  return config;
}

inline RunConfig parse_config_string(const std::string &text, const std::string &case_override = {})
{
  std::istringstream in(text);
  return parse_config(in, case_override);
}

inline RunConfig load_config(const std::string &path, const std::string &case_override = {})
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  return parse_config(in, case_override);
}

// Fully resolved key/value list; parsing it back yields an equivalent configuration.
inline std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig &c)
{
  using detail::format_double;
  const SweepConfig &s = c.sweep;
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  std::string freqs;
  for (double f : c.identities.frequencies)
  {
    freqs += (freqs.empty() ? "" : ",") + format_double(f);
  }
  std::vector<std::pair<std::string, std::string>> out{
      {"medium.omega_p", format_double(s.medium.omega_p)},
      {"medium.omega_0", format_double(s.medium.omega_0)},
      {"medium.gamma", format_double(s.medium.gamma)},
      {"medium.slab_half_length", format_double(s.medium.slab_half_length)},
      {"atom.position", format_double(s.x_a)},
      {"sweep.min", format_double(s.omega_min)},
      {"sweep.max", format_double(s.omega_max)},
      {"sweep.count", std::to_string(s.count)},
      {"sweep.workers", std::to_string(s.workers)},
      {"mesh.ppw", format_double(s.ppw)},
      {"mesh.pml_thickness", format_double(s.pml.thickness)},
      {"mesh.pml_order", format_double(s.pml.order)},
      {"mesh.pml_reflection", format_double(s.pml.target_reflection)},
      {"mesh.quad_points", std::to_string(s.quad_points)},
      {"methods.sfa", b(s.methods.sfa)},
      {"methods.modified_ln", b(s.methods.modified_ln)},
      {"methods.original_ln", b(s.methods.original_ln)},
      {"methods.modes", b(s.methods.modes)},
      {"modes.n_bins", std::to_string(s.modes.bath.n_bins)},
      {"modes.nu_max", format_double(s.modes.bath.nu_max)},
      {"modes.box_length", format_double(s.modes.bath.box_length)},
      {"modes.ppw", format_double(s.modes.ppw)},
      {"identities.frequencies", freqs},
      {"identities.ddgt_threshold", format_double(c.identities.ddgt_threshold)},
      {"identities.tec_threshold", format_double(c.identities.tec_threshold)},
      {"identities.lossless_threshold", format_double(c.identities.lossless_threshold)},
      {"identities.dof_cap", std::to_string(c.identities.dof_cap)},
      {"identities.closed_box", b(c.identities.closed_box)},
      {"identities.dense_ppw", format_double(c.identities.dense_ppw)},
      {"identities.tec_ppw", format_double(c.identities.tec_ppw)},
      {"oracle.count", std::to_string(c.oracle.count)},
      {"oracle.threshold", format_double(c.oracle.threshold)},
      {"output.path", c.output.path},
      {"output.residuals", c.output.residuals},
      {"output.spectrum", c.output.spectrum},
  };
  if (s.padding)
  {
    out.push_back({"mesh.padding", format_double(*s.padding)});
  }
  if (s.modes.eta)
  {
    out.push_back({"modes.eta", format_double(*s.modes.eta)});
  }
  return out;
}

inline std::string echo_config_text(const RunConfig &c)
{
  std::string text;
  for (const auto &[k, v] : echo_config(c))
  {
    text += k + " = " + v + "\n";
  }
  return text;
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_CONFIG_HPP
