// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_CSV_HPP
#define LANGEVIN1D_CSV_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "langevin1d/purcell.hpp"

// CSV output: '#'-prefixed metadata lines, one header row, %.12e numbers, LF endings.
namespace langevin1d
{

inline constexpr const char *kSpectrumHeader =
    "omega_a,pf_sfa,pf_b,pf_m,pf_modified_ln,pf_original_ln,pf_modes,tec_residual";

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string format_number(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

inline std::string format_optional(const std::optional<double> &x)
{
  return x ? format_number(*x) : std::string();
}

inline void write_metadata(std::ostream &os, const Metadata &meta)
{
  for (const auto &[key, value] : meta)
  {
    os << "# " << key << ": " << value << '\n';
  }
}

inline void write_spectrum_row(std::ostream &os, const PurcellRecord &r)
{
  os << format_number(r.omega_a) << ',' << format_optional(r.pf_sfa) << ','
     << format_optional(r.pf_b) << ',' << format_optional(r.pf_m) << ','
     << format_optional(r.pf_modified_ln) << ',' << format_optional(r.pf_original_ln) << ','
     << format_optional(r.pf_modes) << ',' << format_optional(r.tec_residual) << '\n';
}

inline void write_spectrum(std::ostream &os, std::span<const PurcellRecord> records,
                           const Metadata &meta = {})
{
  write_metadata(os, meta);
  os << kSpectrumHeader << '\n';
  for (const PurcellRecord &r : records)
  {
    write_spectrum_row(os, r);
  }
}

// Generic numeric table.
inline void write_table(std::ostream &os, const std::vector<std::string> &columns,
                        const std::vector<std::vector<double>> &rows, const Metadata &meta = {})
{
  write_metadata(os, meta);
  for (std::size_t c = 0; c < columns.size(); ++c)
  {
    os << (c ? "," : "") << columns[c];
  }
  os << '\n';
  for (const auto &row : rows)
  {
    for (std::size_t c = 0; c < row.size(); ++c)
    {
      os << (c ? "," : "") << format_number(row[c]);
    }
    os << '\n';
  }
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_CSV_HPP
