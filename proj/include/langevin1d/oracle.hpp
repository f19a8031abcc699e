// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_ORACLE_HPP
#define LANGEVIN1D_ORACLE_HPP

#include <array>
#include <cmath>
#include <utility>

#include "langevin1d/core.hpp"
#include "langevin1d/medium.hpp"

// Transfer-matrix solutions for a single homogeneous slab in vacuum. Nothing here touches
// the finite-element code path.
namespace langevin1d::oracle
{

//
// Region wavenumbers: vacuum k on both sides, k_s = k sqrt(1 + chi) in the slab with the
// principal root (Im k_s >= 0).
//
struct LayerStack
{
  double half_length = 0.0;
  double k = 0.0;
  Complex k_slab;

  LayerStack(const MediumSpec &medium, double k_)
    : half_length(medium.slab_half_length), k(k_),
      k_slab(k_ * std::sqrt(1.0 + susceptibility(medium, k_)))
  {
    // A lossless negative permittivity carries a signed zero imaginary part.
    if (k_slab.imag() < 0.0)
    {
      k_slab = -k_slab;
    }
  }

  // Region index 0 (x < -a), 1 (slab, closed), 2 (x > a).
  int RegionOf(double x) const { return x < -half_length ? 0 : (x > half_length ? 2 : 1); }
  Complex WavenumberOf(int region) const { return region == 1 ? k_slab : Complex(k); }
};

//
// u(x) = A_j e^{i k_j x} + B_j e^{-i k_j x} in region j, with u and u' continuous.
//
class PiecewiseWave
{
public:
  // Prescribe the coefficients in region `seed` and propagate to the other regions.
  PiecewiseWave(const LayerStack &stack, int seed, Complex A, Complex B) : stack_(stack)
  {
    coef_[seed] = {A, B};
    if (seed == 0)
    {
      coef_[1] = Match(0, 1, -stack.half_length);
      coef_[2] = Match(1, 2, stack.half_length);
    }
    else if (seed == 2)
    {
      coef_[1] = Match(2, 1, stack.half_length);
      coef_[0] = Match(1, 0, -stack.half_length);
    }
    else
    {
      coef_[0] = Match(1, 0, -stack.half_length);
      coef_[2] = Match(1, 2, stack.half_length);
    }
  }

  Complex Value(double x) const
  {
    const int j = stack_.RegionOf(x);
    const Complex kj = stack_.WavenumberOf(j);
    return coef_[j].first * std::exp(I * kj * x) + coef_[j].second * std::exp(-I * kj * x);
  }

  Complex Derivative(double x) const
  {
    const int j = stack_.RegionOf(x);
    const Complex kj = stack_.WavenumberOf(j);
    return I * kj *
           (coef_[j].first * std::exp(I * kj * x) - coef_[j].second * std::exp(-I * kj * x));
  }

  // Limits from a chosen side of an interface, for continuity checks.
  Complex ValueIn(int region, double x) const
  {
    const Complex kj = stack_.WavenumberOf(region);
    return coef_[region].first * std::exp(I * kj * x) +
           coef_[region].second * std::exp(-I * kj * x);
  }
  Complex DerivativeIn(int region, double x) const
  {
    const Complex kj = stack_.WavenumberOf(region);
    return I * kj *
           (coef_[region].first * std::exp(I * kj * x) -
            coef_[region].second * std::exp(-I * kj * x));
  }

  std::pair<Complex, Complex> Coefficients(int region) const { return coef_[region]; }

private:
  std::pair<Complex, Complex> Match(int from, int to, double x) const
  {
    const Complex u = ValueIn(from, x), du = DerivativeIn(from, x);
    const Complex kt = stack_.WavenumberOf(to);
    const Complex A = 0.5 * (u + du / (I * kt)) * std::exp(-I * kt * x);
    const Complex B = 0.5 * (u - du / (I * kt)) * std::exp(I * kt * x);
    return {A, B};
  }

  LayerStack stack_;
  std::array<std::pair<Complex, Complex>, 3> coef_{};
};

// Airy coefficients; r is referenced to the entry face and t to the incident wave
// continued through the slab position, as in extract_r_t.
inline std::pair<Complex, Complex> tmm_reflection_transmission(const MediumSpec &medium, double k,
                                                               int direction)
{
  (void)direction;  // the stack is mirror-symmetric
  const LayerStack stack(medium, k);
  const double L = 2.0 * stack.half_length;
  const Complex r12 = (k - stack.k_slab) / (k + stack.k_slab);
  const Complex phase = std::exp(I * stack.k_slab * L);
  const Complex denom = 1.0 - r12 * r12 * phase * phase;
  return {r12 * (1.0 - phase * phase) / denom,
          (1.0 - r12 * r12) * phase * std::exp(-I * (k * L)) / denom};
}

// Total field for a unit plane wave incident along `direction`.
inline Complex tmm_field(const MediumSpec &medium, double k, int direction, double x)
{
  const LayerStack stack(medium, k);
  // Pure outgoing wave on the transmission side, then normalise the incident part.
  if (direction > 0)
  {
    const PiecewiseWave u(stack, 2, 1.0, 0.0);
    return u.Value(x) / u.Coefficients(0).first;
  }
  const PiecewiseWave u(stack, 0, 0.0, 1.0);
  return u.Value(x) / u.Coefficients(2).second;
}

// G = u_L(x_<) u_R(x_>) / W with W = u_L' u_R - u_L u_R' so that (d^2 + k^2 eps) G = -delta.
inline Complex tmm_green(const MediumSpec &medium, double k, double x, double x_prime)
{
  const LayerStack stack(medium, k);
  const PiecewiseWave u_left(stack, 0, 0.0, 1.0);   // e^{-ikx} for x < -a
  const PiecewiseWave u_right(stack, 2, 1.0, 0.0);  // e^{+ikx} for x > a
  const double probe = 0.0;
  const Complex W = u_left.Derivative(probe) * u_right.Value(probe) -
                    u_left.Value(probe) * u_right.Derivative(probe);
  const double lo = std::min(x, x_prime), hi = std::max(x, x_prime);
  return u_left.Value(lo) * u_right.Value(hi) / W;
}

}  // namespace langevin1d::oracle

#endif  // LANGEVIN1D_ORACLE_HPP
