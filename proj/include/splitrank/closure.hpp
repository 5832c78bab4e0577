#pragma once

// Split and Chvátal closures with respect to finite sets of integral
// directions.

#include <cstddef>
#include <vector>

#include "splitrank/polyhedron.hpp"

namespace splitrank {

/// Integral directions of a common dimension, deduplicated and sorted with
/// canonical_less. The zero vector is allowed (it never cuts).
class DirectionList {
 public:
  DirectionList() = default;
  /// Throws NotIntegral or DimensionMismatch.
  DirectionList(std::size_t dim, RatMatrix directions);

  std::size_t dim() const { return dim_; }
  const RatMatrix& directions() const { return directions_; }
  std::size_t size() const { return directions_.size(); }
  bool empty() const { return directions_.empty(); }

  /// Union of two lists.
  DirectionList merged(const DirectionList& other) const;

  friend bool operator==(const DirectionList&, const DirectionList&) = default;

 private:
  std::size_t dim_ = 0;
  RatMatrix directions_;
};

struct DirectionRange {
  Rational min;
  Rational max;
};

/// min and max of d·x over a nonempty Q. Throws UnboundedDirectionRange.
DirectionRange direction_range(const Polyhedron& q, const RatVector& d);

/// conv(Q ∩ {x : d·x ∈ Z}) for integral d with a bounded range on Q.
/// The zero direction and the empty set are returned unchanged.
///
/// A vertex of a slice Q ∩ {d·x = δ} lies on an edge of Q, so the hull is
/// spanned by the outermost integral levels on every edge plus rec(Q).
Polyhedron direction_closure(const Polyhedron& q, const RatVector& d);

/// conv((Q ∩ {d·x <= δ}) ∪ (Q ∩ {d·x >= δ + 1})).
Polyhedron split_cut(const Polyhedron& q, const RatVector& d, const Integer& delta);

/// ⋂ over d ∈ D of direction_closure(Q, d); Q itself when D is empty.
Polyhedron d_set_closure(const Polyhedron& q, const DirectionList& directions);

/// t-fold iterate of d_set_closure.
Polyhedron iterate_closure(const Polyhedron& q, const DirectionList& directions,
                           std::size_t t);

/// Q ∩ {d·x <= ⌊max_Q d·x⌋ : d ∈ D}. Throws UnboundedDirectionRange (Above).
Polyhedron chvatal_closure(const Polyhedron& q, const DirectionList& directions);

/// Primitive integral vectors of ∞-norm at most `bound`, one per ± pair
/// (first nonzero entry positive).
DirectionList bounded_directions(std::size_t n, unsigned bound);

struct SkippedDirection {
  std::size_t iteration;
  RatVector direction;
};

/// Result of bounded_split_rank. `reached` means the iterate equals the
/// integer hull after `iterations` rounds; otherwise the cap was hit and
/// `final_iterate` holds the last iterate.
struct BoundedRankResult {
  bool reached = false;
  std::size_t iterations = 0;
  Polyhedron final_iterate = Polyhedron::empty(0);
  std::vector<SkippedDirection> skipped;
};

/// Smallest t <= cap with iterate_closure(Q, D, t) = integer_hull(Q) for
/// D = bounded_directions(n, bound). Directions with an unbounded range on
/// the current iterate are left out of that round and recorded.
BoundedRankResult bounded_split_rank(const Polyhedron& q, unsigned bound, std::size_t cap);

}  // namespace splitrank
