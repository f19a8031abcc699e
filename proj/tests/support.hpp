// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_TESTS_SUPPORT_HPP
#define LANGEVIN1D_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "langevin1d/mesh.hpp"

namespace langevin1d::test_support
{

inline MediumSpec case_medium(double gamma)
{
  MediumSpec m;
  m.gamma = gamma;
  return m;
}

inline PmlSpec default_pml(double k_min = 300.0)
{
  return {2.0 * 2.0 * pi / k_min, 3.0, 1e-10};
}

// Open mesh with two long wavelengths of padding beyond the outermost point.
inline Mesh1D open_mesh(const MediumSpec &medium, std::vector<double> points, double ppw,
                        double k_max = 700.0, double k_min = 300.0)
{
  double reach = medium.slab_half_length;
  for (double x : points)
  {
    reach = std::max(reach, std::abs(x));
  }
  const double padding = reach - medium.slab_half_length + 2.0 * 2.0 * pi / k_min;
  return build_mesh(medium, padding, ppw, k_max, default_pml(k_min), points);
}

inline double rel(std::complex<double> a, std::complex<double> b)
{
  return std::abs(a - b) / std::abs(b);
}

// i e^{ik|x - x'|} / (2k)
inline std::complex<double> free_green(double k, double x, double xp)
{
  return std::complex<double>(0.0, 1.0) * std::exp(std::complex<double>(0.0, k * std::abs(x - xp))) /
         (2.0 * k);
}

}  // namespace langevin1d::test_support

#endif  // LANGEVIN1D_TESTS_SUPPORT_HPP
