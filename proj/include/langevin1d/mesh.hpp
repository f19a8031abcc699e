// SPDX-License-Identifier: Apache-2.0

#ifndef LANGEVIN1D_MESH_HPP
#define LANGEVIN1D_MESH_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "langevin1d/core.hpp"
#include "langevin1d/medium.hpp"

namespace langevin1d
{

enum class Region
{
  PmlLeft,
  Vacuum,
  Slab,
  PmlRight
};

inline std::string_view to_string(Region r)
{
  switch (r)
  {
    case Region::PmlLeft:
      return "PML_LEFT";
    case Region::Vacuum:
      return "VACUUM";
    case Region::Slab:
      return "SLAB";
    case Region::PmlRight:
      return "PML_RIGHT";
  }
  return "?";
}

//
// Polynomially graded complex coordinate stretching, shared by both sides.
//
struct PmlSpec
{
  double thickness = 0.0;
  double order = 3.0;
  double target_reflection = 1e-10;

  void Validate() const
  {
    if (!(thickness > 0.0) || !(order >= 1.0) ||
        !(target_reflection > 0.0 && target_reflection < 1.0))
    {
      throw InvalidInput("pml: require thickness > 0, order >= 1, 0 < R0 < 1");
    }
  }

  double SigmaMax() const
  {
    return (order + 1.0) * std::log(1.0 / target_reflection) / (2.0 * thickness);
  }
};

//
// Sorted 1D grid. Element e spans [nodes[e], nodes[e+1]] and carries one region tag.
// When the mesh has PML layers the two outermost nodes carry homogeneous Dirichlet
// conditions and are excluded from the degree-of-freedom numbering.
//
struct Mesh1D
{
  std::vector<double> nodes;
  std::vector<Region> regions;
  std::optional<PmlSpec> pml;
  double slab_half_length = 0.0;
  double pml_inner_left = 0.0;
  double pml_inner_right = 0.0;
  // r/t probe positions inside the vacuum padding (PML meshes only).
  double probe_left = 0.0;
  double probe_right = 0.0;

  std::size_t NumNodes() const { return nodes.size(); }
  std::size_t NumElements() const { return regions.size(); }
  bool HasPml() const { return pml.has_value(); }
  double Left() const { return nodes.front(); }
  double Right() const { return nodes.back(); }
  double ElementLength(std::size_t e) const { return nodes[e + 1] - nodes[e]; }
  double MaxElementLength() const
  {
    double h = 0.0;
    for (std::size_t e = 0; e < NumElements(); ++e)
    {
      h = std::max(h, ElementLength(e));
    }
    return h;
  }

  bool InPml(double x) const
  {
    return HasPml() && (x < pml_inner_left || x > pml_inner_right);
  }

  // Index of the node located exactly at x, if any.
  std::optional<std::size_t> NodeIndex(double x) const
  {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    if (it != nodes.end() && *it == x)
    {
      return static_cast<std::size_t>(it - nodes.begin());
    }
    return std::nullopt;
  }

  // Element containing x; nodes shared by two elements resolve to the right one except
  // at the last node.
  std::size_t FindElement(double x) const
  {
    if (!(x >= Left() && x <= Right()))
    {
      throw InvalidInput("mesh: position outside the computational domain");
    }
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t e = static_cast<std::size_t>(it - nodes.begin());
    e = (e == 0) ? 0 : e - 1;
    return std::min(e, NumElements() - 1);
  }

  // Dirichlet elimination: node i <-> dof i-1 for PML meshes. Closed boxes keep all nodes.
  std::size_t NumDofs() const { return HasPml() ? NumNodes() - 2 : NumNodes(); }
  std::optional<std::size_t> DofOfNode(std::size_t node) const
  {
    if (!HasPml())
    {
      return node;
    }
    if (node == 0 || node + 1 == NumNodes())
    {
      return std::nullopt;
    }
    return node - 1;
  }
};

namespace detail
{

// Subdivide consecutive breakpoints into equal elements no longer than h_max.
inline std::vector<double> subdivide(std::vector<double> breaks, double h_max)
{
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> nodes{breaks.front()};
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
  {
    const double a = breaks[b], c = breaks[b + 1];
    const auto n = static_cast<std::size_t>(std::ceil((c - a) / h_max - 1e-9));
    for (std::size_t i = 1; i < n; ++i)
    {
      nodes.push_back(a + (c - a) * static_cast<double>(i) / static_cast<double>(n));
    }
    nodes.push_back(c);
  }
  return nodes;
}

inline double max_element_length(double k_max, double ppw)
{
  if (!(k_max > 0.0))
  {
    throw InvalidInput("mesh: k_max must be positive");
  }
  if (!(ppw >= 10.0))
  {
    throw InvalidInput("mesh: points per wavelength below the accuracy floor of 10");
  }
  return 2.0 * pi / k_max / ppw;
}

}  // namespace detail

// Open-domain mesh: PML | vacuum padding | slab | vacuum padding | PML.
inline Mesh1D build_mesh(const MediumSpec &medium, double padding, double ppw, double k_max,
                         const PmlSpec &pml, std::span<const double> observation_points)
{
  medium.Validate();
  pml.Validate();
  if (!(padding > 0.0))
  {
    throw InvalidInput("mesh: padding must be positive");
  }
  const double h_max = detail::max_element_length(k_max, ppw);
  const double a = medium.slab_half_length;
  Mesh1D mesh;
  mesh.pml = pml;
  mesh.slab_half_length = a;
  mesh.pml_inner_left = -a - padding;
  mesh.pml_inner_right = a + padding;
  mesh.probe_left = -a - 0.5 * padding;
  mesh.probe_right = a + 0.5 * padding;

  std::vector<double> breaks{mesh.pml_inner_left - pml.thickness,
                             mesh.pml_inner_left,
                             -a,
                             a,
                             mesh.pml_inner_right,
                             mesh.pml_inner_right + pml.thickness,
                             mesh.probe_left,
                             mesh.probe_right};
  for (double x : observation_points)
  {
    if (!(x >= mesh.pml_inner_left && x <= mesh.pml_inner_right))
    {
      throw InvalidInput("mesh: observation point lies inside the PML or outside the domain");
    }
    breaks.push_back(x);
  }
  mesh.nodes = detail::subdivide(std::move(breaks), h_max);
  for (std::size_t e = 0; e + 1 < mesh.nodes.size(); ++e)
  {
    const double mid = 0.5 * (mesh.nodes[e] + mesh.nodes[e + 1]);
    if (mid < mesh.pml_inner_left)
    {
      mesh.regions.push_back(Region::PmlLeft);
    }
    else if (mid > mesh.pml_inner_right)
    {
      mesh.regions.push_back(Region::PmlRight);
    }
    else if (std::abs(mid) < a)
    {
      mesh.regions.push_back(Region::Slab);
    }
    else
    {
      mesh.regions.push_back(Region::Vacuum);
    }
  }
  return mesh;
}

// Closed box [-box_length/2, box_length/2] without PML, slab centred.
inline Mesh1D build_box_mesh(const MediumSpec &medium, double box_length, double ppw, double k_max,
                             std::span<const double> observation_points = {})
{
  medium.Validate();
  const double a = medium.slab_half_length;
  if (!(box_length > 2.0 * a))
  {
    throw InvalidInput("box mesh: box must enclose the slab");
  }
  const double h_max = detail::max_element_length(k_max, ppw);
  Mesh1D mesh;
  mesh.slab_half_length = a;
  mesh.pml_inner_left = -0.5 * box_length;
  mesh.pml_inner_right = 0.5 * box_length;
  std::vector<double> breaks{-0.5 * box_length, -a, a, 0.5 * box_length};
  for (double x : observation_points)
  {
    if (!(std::abs(x) <= 0.5 * box_length))
    {
      throw InvalidInput("box mesh: observation point outside the box");
    }
    breaks.push_back(x);
  }
  mesh.nodes = detail::subdivide(std::move(breaks), h_max);
  for (std::size_t e = 0; e + 1 < mesh.nodes.size(); ++e)
  {
    const double mid = 0.5 * (mesh.nodes[e] + mesh.nodes[e + 1]);
    mesh.regions.push_back(std::abs(mid) < a ? Region::Slab : Region::Vacuum);
  }
  return mesh;
}

// s(x, k) = 1 + (i/k) sigma_max (depth/d)^m inside the PML, 1 elsewhere.
inline Complex stretch_factor(const Mesh1D &mesh, double x, double k)
{
  if (!mesh.HasPml())
  {
    return 1.0;
  }
  double depth = 0.0;
  if (x < mesh.pml_inner_left)
  {
    depth = mesh.pml_inner_left - x;
  }
  else if (x > mesh.pml_inner_right)
  {
    depth = x - mesh.pml_inner_right;
  }
  else
  {
    return 1.0;
  }
  const PmlSpec &pml = *mesh.pml;
  const double sigma = pml.SigmaMax() * std::pow(depth / pml.thickness, pml.order);
  return Complex(1.0, sigma / k);
}

// Debug dump: one row per node with the region of the element to its right.
inline void write_mesh_csv(std::ostream &os, const Mesh1D &mesh)
{
  os << "node,x,region\n";
  char buf[64];
  for (std::size_t i = 0; i < mesh.NumNodes(); ++i)
  {
    const Region r = mesh.regions[std::min(i, mesh.NumElements() - 1)];
    std::snprintf(buf, sizeof(buf), "%.12e", mesh.nodes[i]);
    os << i << ',' << buf << ',' << to_string(r) << '\n';
  }
}

}  // namespace langevin1d

#endif  // LANGEVIN1D_MESH_HPP
