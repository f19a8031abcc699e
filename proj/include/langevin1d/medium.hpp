// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_MEDIUM_HPP
#define LANGEVIN1D_MEDIUM_HPP

#include <cmath>

#include "langevin1d/core.hpp"

namespace langevin1d
{

//
// Homogeneous Lorentz-oscillator slab occupying the closed interval
// [-slab_half_length, +slab_half_length]. Frequencies are wavenumbers (rad/m, c = 1).
//
struct MediumSpec
{
  double omega_p = 100.0;
  double omega_0 = 500.0;
  double gamma = 50.0;
  double slab_half_length = 0.03125;

  void Validate() const
  {
    // omega_p = 0 is accepted as the empty-slab (vacuum) limit.
    if (!(omega_p >= 0.0) || !(omega_0 > 0.0) || !(gamma >= 0.0) || !(slab_half_length > 0.0))
    {
      throw InvalidInput("medium: require omega_p >= 0, omega_0 > 0, gamma >= 0, "
                         "slab_half_length > 0");
    }
  }

  double SlabLength() const { return 2.0 * slab_half_length; }
  bool InSlab(double x) const { return std::abs(x) <= slab_half_length; }
  bool IsVacuum() const { return omega_p == 0.0; }

  static MediumSpec Vacuum(double half_length = 0.03125)
  {
    return {0.0, 500.0, 0.0, half_length};
  }
};

// Lorentz susceptibility with e^{-i omega t} convention: Im chi >= 0 for gamma >= 0.
// Negative omega is accepted so that chi(-w) = conj(chi(w)) can be checked.
inline Complex susceptibility(const MediumSpec &spec, double omega)
{
  const Complex denom(spec.omega_0 * spec.omega_0 - omega * omega, -omega * spec.gamma);
  if (spec.omega_p == 0.0)
  {
    return 0.0;
  }
  return spec.omega_p * spec.omega_p / denom;
}

inline Complex relative_permittivity(const MediumSpec &spec, double x, double omega)
{
  return spec.InSlab(x) ? 1.0 + susceptibility(spec, omega) : Complex(1.0, 0.0);
}

// Im chi at position x (the loss density weighting the noise currents).
inline double loss_density(const MediumSpec &spec, double x, double omega)
{
  return spec.InSlab(x) ? susceptibility(spec, omega).imag() : 0.0;
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_MEDIUM_HPP
