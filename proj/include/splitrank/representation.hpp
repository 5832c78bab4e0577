#pragma once

#include <cstddef>
#include <vector>

#include "splitrank/numeric.hpp"

namespace splitrank {

/// coeffs·x ≤ rhs, or coeffs·x = rhs when stored among equalities.
struct LinIneq {
  RatVector coeffs;
  Rational rhs;

  friend bool operator==(const LinIneq&, const LinIneq&) = default;
};

/// Inequality description. Raw instances may be redundant; the ones held by
/// a Polyhedron are canonical (see Polyhedron).
struct HRep {
  std::size_t dim = 0;
  std::vector<LinIneq> inequalities;
  std::vector<LinIneq> equalities;

  friend bool operator==(const HRep&, const HRep&) = default;
};

/// Generator description: conv(vertices) + cone(rays) + span(lineality).
struct VRep {
  RatMatrix vertices;
  RatMatrix rays;
  RatMatrix lineality;

  bool empty() const { return vertices.empty(); }
  friend bool operator==(const VRep&, const VRep&) = default;
};

}  // namespace splitrank
