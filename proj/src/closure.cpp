#include "splitrank/closure.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "splitrank/errors.hpp"
#include "splitrank/integer_hull.hpp"

namespace splitrank {

DirectionList::DirectionList(std::size_t dim, RatMatrix directions)
    : dim_(dim), directions_(std::move(directions)) {
  for (const auto& d : directions_) {
    if (d.size() != dim_) throw DimensionMismatch("direction length differs from dim");
    if (!is_integral(d)) throw NotIntegral("direction " + to_string(d) + " is not integral");
  }
  std::sort(directions_.begin(), directions_.end(), canonical_less);
  directions_.erase(std::unique(directions_.begin(), directions_.end()), directions_.end());
}

DirectionList DirectionList::merged(const DirectionList& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("merging direction lists of different dim");
  RatMatrix all = directions_;
  all.insert(all.end(), other.directions_.begin(), other.directions_.end());
  return DirectionList(dim_, std::move(all));
}

DirectionRange direction_range(const Polyhedron& q, const RatVector& d) {
  const auto lo = minimize(q, d);
  if (!lo) throw UnboundedDirectionRange(d, RangeSide::Below);
  const auto hi = maximize(q, d);
  if (!hi) throw UnboundedDirectionRange(d, RangeSide::Above);
  return {*lo, *hi};
}

Polyhedron direction_closure(const Polyhedron& q, const RatVector& d) {
  if (d.size() != q.dim()) throw DimensionMismatch("direction_closure: direction length");
  if (!is_integral(d)) throw NotIntegral("direction_closure: direction is not integral");
  if (q.is_empty() || is_zero(d)) return q;
  direction_range(q, d);  // bounded range ⇔ d ⟂ rec(Q)
  const VRep& v = q.vrep();
  if (std::all_of(v.vertices.begin(), v.vertices.end(),
                  [&](const RatVector& x) { return is_integral(dot(d, x)); })) {
    return q;
  }

  const std::size_t n = q.dim();
  const HRep& h = q.hrep();
  const std::size_t nv = v.vertices.size();
  const std::size_t words = (h.inequalities.size() + 63) / 64;
  const auto tight_set = [&](const RatVector& x, bool ray) {
    std::vector<std::uint64_t> bits(words);
    for (std::size_t j = 0; j < h.inequalities.size(); ++j) {
      const Rational lhs = dot(h.inequalities[j].coeffs, x);
      if (ray ? sgn(lhs) == 0 : lhs == h.inequalities[j].rhs) bits[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return bits;
  };
  std::vector<Rational> level(nv);
  std::vector<std::vector<std::uint64_t>> tight;
  for (std::size_t i = 0; i < nv; ++i) {
    level[i] = dot(d, v.vertices[i]);
    tight.push_back(tight_set(v.vertices[i], false));
  }
  std::vector<std::vector<std::uint64_t>> ray_tight;
  for (const auto& r : v.rays) ray_tight.push_back(tight_set(r, true));
  // Two vertices span an edge iff no other vertex or extreme ray lies on
  // every facet through both.
  const auto is_edge = [&](std::size_t a, std::size_t b) {
    std::vector<std::uint64_t> common(words);
    for (std::size_t w = 0; w < words; ++w) common[w] = tight[a][w] & tight[b][w];
    const auto covers = [&](const std::vector<std::uint64_t>& other) {
      for (std::size_t w = 0; w < words; ++w) {
        if (common[w] & ~other[w]) return false;
      }
      return true;
    };
    for (std::size_t c = 0; c < nv; ++c) {
      if (c != a && c != b && covers(tight[c])) return false;
    }
    for (const auto& rt : ray_tight) {
      if (covers(rt)) return false;
    }
    return true;
  };

  RatMatrix points;
  for (std::size_t i = 0; i < nv; ++i) {
    if (is_integral(level[i])) points.push_back(v.vertices[i]);
  }
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = a + 1; b < nv; ++b) {
      if (level[a] == level[b]) continue;
      const std::size_t lo_i = level[a] < level[b] ? a : b;
      const std::size_t hi_i = lo_i == a ? b : a;
      const Integer first = ceil(level[lo_i]);
      const Integer last = floor(level[hi_i]);
      if (first > last) continue;
      if (!is_edge(a, b)) continue;
      const RatVector& u = v.vertices[lo_i];
      const RatVector step = sub(v.vertices[hi_i], u);
      const Rational span = level[hi_i] - level[lo_i];
      for (const Integer& target : {first, last}) {
        const Rational t = (Rational(target) - level[lo_i]) / span;
        if (sgn(t) == 0 || t == 1) continue;  // a vertex, already present
        points.push_back(add(u, scaled(step, t)));
      }
    }
  }
  if (points.empty()) return Polyhedron::empty(n);
  return Polyhedron::from_vrep(n, {std::move(points), v.rays, v.lineality});
}

Polyhedron split_cut(const Polyhedron& q, const RatVector& d, const Integer& delta) {
  if (d.size() != q.dim()) throw DimensionMismatch("split_cut: direction length");
  if (!is_integral(d)) throw NotIntegral("split_cut: direction is not integral");
  if (is_zero(d)) throw ZeroVector("split_cut: zero direction");
  const Polyhedron left = restrict(q, {LinIneq{d, Rational(delta)}});
  const Polyhedron right = restrict(q, {LinIneq{negated(d), Rational(-(delta + 1))}});
  return conv_union(left, right);
}

Polyhedron d_set_closure(const Polyhedron& q, const DirectionList& directions) {
  if (directions.dim() != q.dim() && !directions.empty()) {
    throw DimensionMismatch("d_set_closure: direction list dimension");
  }
  // One restriction of q by every row that cuts it, instead of a chain of
  // pairwise intersections.
  std::vector<LinIneq> ineqs;
  std::vector<LinIneq> eqs;
  const VRep& v = q.vrep();
  const auto cuts = [&](const LinIneq& row, bool equality) {
    for (const auto& x : v.vertices) {
      const Rational lhs = dot(row.coeffs, x);
      if (equality ? lhs != row.rhs : lhs > row.rhs) return true;
    }
    for (const auto& r : v.rays) {
      const int s = sgn(dot(row.coeffs, r));
      if (equality ? s != 0 : s > 0) return true;
    }
    for (const auto& l : v.lineality) {
      if (sgn(dot(row.coeffs, l)) != 0) return true;
    }
    return false;
  };
  for (const auto& d : directions.directions()) {
    const Polyhedron piece = direction_closure(q, d);
    if (piece.is_empty()) return piece;
    for (const auto& row : piece.hrep().inequalities) {
      if (cuts(row, false)) ineqs.push_back(row);
    }
    for (const auto& row : piece.hrep().equalities) {
      if (cuts(row, true)) eqs.push_back(row);
    }
  }
  return restrict(q, ineqs, eqs);
}

Polyhedron iterate_closure(const Polyhedron& q, const DirectionList& directions,
                           std::size_t t) {
  Polyhedron current = q;
  for (std::size_t i = 0; i < t; ++i) {
    Polyhedron next = d_set_closure(current, directions);
    if (next == current) break;  // fixpoint: later iterates are equal
    current = std::move(next);
  }
  return current;
}

Polyhedron chvatal_closure(const Polyhedron& q, const DirectionList& directions) {
  if (q.is_empty()) return q;
  std::vector<LinIneq> cuts;
  for (const auto& d : directions.directions()) {
    const auto top = maximize(q, d);
    if (!top) throw UnboundedDirectionRange(d, RangeSide::Above);
    cuts.push_back({d, Rational(floor(*top))});
  }
  return restrict(q, cuts);
}

DirectionList bounded_directions(std::size_t n, unsigned bound) {
  RatMatrix found;
  const long b = static_cast<long>(bound);
  std::vector<long> x(n, -b);
  while (true) {
    std::size_t lead = 0;
    while (lead < n && x[lead] == 0) ++lead;
    if (lead < n && x[lead] > 0) {
      long g = 0;
      for (long xi : x) g = std::gcd(g, xi);
      if (g == 1) {
        RatVector d;
        for (long xi : x) d.emplace_back(xi);
        found.push_back(std::move(d));
      }
    }
    std::size_t i = 0;
    while (i < n && x[i] == b) x[i++] = -b;
    if (i == n) break;
    ++x[i];
  }
  return DirectionList(n, std::move(found));
}

BoundedRankResult bounded_split_rank(const Polyhedron& q, unsigned bound, std::size_t cap) {
  const Polyhedron hull = integer_hull(q);
  const DirectionList all = bounded_directions(q.dim(), bound);
  BoundedRankResult out;
  Polyhedron current = q;
  for (std::size_t t = 0;; ++t) {
    if (current == hull) {
      out.reached = true;
      out.iterations = t;
      break;
    }
    if (t == cap) {
      out.iterations = t;
      break;
    }
    RatMatrix usable;
    for (const auto& d : all.directions()) {
      if (maximize(current, d) && minimize(current, d)) {
        usable.push_back(d);
      } else {
        out.skipped.push_back({t, d});
      }
    }
    current = d_set_closure(current, DirectionList(q.dim(), std::move(usable)));
  }
  out.final_iterate = current;
  return out;
}

}  // namespace splitrank
