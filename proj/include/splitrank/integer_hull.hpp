#pragma once

#include <vector>

#include "splitrank/polyhedron.hpp"

namespace splitrank {

/// P ∩ Z^n in lexicographic order. Coordinates are fixed left to right, each
/// range taken from two fresh LPs. Throws UnboundedInput for unbounded P.
RatMatrix lattice_points(const Polyhedron& p);

/// conv(Q ∩ Z^n). Unbounded Q is handled by Meyer's decomposition: the
/// lattice points of conv(vertices) + Σ [0,1]·r over the primitive recession
/// generators r (lineality in both signs), plus rec(Q).
Polyhedron integer_hull(const Polyhedron& q);

/// A row c·x <= alpha of an integral facet system.
struct FacetInequality {
  RatVector normal;  // primitive integral, or zero for the empty-hull row
  Integer rhs;

  friend bool operator==(const FacetInequality&, const FacetInequality&) = default;
};

/// Integral C, a describing P = conv(Q ∩ Z^n) and b >= a with
/// Q ⊆ {x : C x <= b}. Equalities of P appear as a + and a - row. An empty P
/// is described by the single row 0·x <= -1 with b = 0.
struct FacetSystem {
  IntMatrix C;
  IntVector a;
  IntVector b;

  std::vector<FacetInequality> rows() const;
};

/// Throws NonIntegralOffset if a facet offset of the hull is not integral.
FacetSystem facet_system(const Polyhedron& q);

}  // namespace splitrank
