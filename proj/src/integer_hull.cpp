#include "splitrank/integer_hull.hpp"

#include <algorithm>

#include "splitrank/errors.hpp"

namespace splitrank {

namespace {

void enumerate(const HRep& base, std::size_t depth, RatVector& prefix, RatMatrix& out) {
  const std::size_t n = base.dim;
  if (depth == n) {
    out.push_back(prefix);
    return;
  }
  HRep sys = base;
  for (std::size_t j = 0; j < depth; ++j) sys.equalities.push_back({unit_vector(n, j), prefix[j]});
  const RatVector e = unit_vector(n, depth);
  const LPResult lo = solve_lp(sys, e, Sense::Minimize);
  if (lo.status == LPStatus::Infeasible) return;
  const LPResult hi = solve_lp(sys, e, Sense::Maximize);
  if (lo.status != LPStatus::Optimal || hi.status != LPStatus::Optimal) {
    throw UnboundedInput("lattice_points: polyhedron is unbounded");
  }
  for (Integer v = ceil(lo.value); v <= floor(hi.value); ++v) {
    prefix[depth] = v;
    enumerate(base, depth + 1, prefix, out);
  }
  prefix[depth] = 0;
}

}  // namespace

RatMatrix lattice_points(const Polyhedron& p) {
  if (!p.is_bounded()) throw UnboundedInput("lattice_points: polyhedron is unbounded");
  RatMatrix out;
  if (p.is_empty()) return out;
  RatVector prefix = zero_vector(p.dim());
  enumerate(p.hrep(), 0, prefix, out);
  return out;  // left-to-right enumeration is already lexicographic
}

Polyhedron integer_hull(const Polyhedron& q) {
  if (q.is_empty()) return q;
  const std::size_t n = q.dim();
  const VRep& v = q.vrep();
  if (q.is_bounded()) return Polyhedron::from_vrep(n, {lattice_points(q), {}, {}});

  RatMatrix generators = v.rays;
  for (const auto& l : v.lineality) {
    generators.push_back(l);
    generators.push_back(negated(l));
  }
  // conv(V) + Σ [0,1]·r is the hull of the vertices shifted by every
  // subset sum of the generators.
  RatMatrix corners = v.vertices;
  for (const auto& r : generators) {
    const std::size_t count = corners.size();
    for (std::size_t i = 0; i < count; ++i) corners.push_back(add(corners[i], r));
  }
  const Polyhedron box = Polyhedron::from_vrep(n, {corners, {}, {}});
  RatMatrix points = lattice_points(box);
  if (points.empty()) return Polyhedron::empty(n);
  return Polyhedron::from_vrep(n, {std::move(points), v.rays, v.lineality});
}

std::vector<FacetInequality> FacetSystem::rows() const {
  std::vector<FacetInequality> out;
  for (std::size_t i = 0; i < C.size(); ++i) out.push_back({to_rational(C[i]), a[i]});
  return out;
}

FacetSystem facet_system(const Polyhedron& q) {
  const std::size_t n = q.dim();
  const Polyhedron p = integer_hull(q);
  FacetSystem fs;
  if (p.is_empty()) {
    fs.C.push_back(IntVector(n, Integer(0)));
    fs.a.push_back(-1);
    fs.b.push_back(0);
    return fs;
  }
  std::vector<LinIneq> rows;
  for (const auto& e : p.hrep().equalities) {
    rows.push_back(e);
    rows.push_back({negated(e.coeffs), Rational(-e.rhs)});
  }
  for (const auto& f : p.hrep().inequalities) rows.push_back(f);
  for (const auto& row : rows) {
    if (!is_integral(row.rhs)) {
      throw NonIntegralOffset("hull facet " + to_string(row.coeffs) + " has offset " +
                              to_string(row.rhs));
    }
    const auto top = maximize(q, row.coeffs);
    if (!top) throw Error("facet_system: hull row unbounded over Q");
    const Integer alpha = row.rhs.get_num();
    fs.C.push_back(to_integer(row.coeffs));
    fs.a.push_back(alpha);
    fs.b.push_back(std::max(alpha, ceil(*top)));
  }
  return fs;
}

}  // namespace splitrank
