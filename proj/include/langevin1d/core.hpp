// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_CORE_HPP
#define LANGEVIN1D_CORE_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace langevin1d
{

inline constexpr const char *kVersion = "0.1.0";

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

// Thrown when a frequency-domain operator has a vanishing pivot.
class SingularOperator : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Thrown for violated preconditions on geometry or configuration inputs.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace langevin1d

#endif  // LANGEVIN1D_CORE_HPP
