#include "splitrank/certifier.hpp"

#include <algorithm>

namespace splitrank {

namespace {

LinIneq at_least(const FacetInequality& facet) {
  return {negated(facet.normal), Rational(-facet.rhs)};
}

RatVector bounds_row(const Polyhedron& s, const RatMatrix& directions) {
  RatVector row;
  row.reserve(directions.size());
  for (const auto& d : directions) {
    const auto top = maximize(s, d);
    if (!top) throw UnboundedDirectionRange(d, RangeSide::Above);
    row.push_back(*top);
  }
  return row;
}

}  // namespace

CapExceeded::CapExceeded(std::size_t c, ClosureTrace t)
    : Error("iteration cap " + std::to_string(c) + " reached before the facet held"),
      cap(c),
      trace(std::move(t)) {}

BudgetExceeded::BudgetExceeded(std::size_t b, std::size_t n, ClosureTrace t)
    : Error("iterate needs " + std::to_string(n) + " bits, over the budget of " +
            std::to_string(b)),
      budget(b),
      bits(n),
      trace(std::move(t)) {}

RecessionFace recession_face(const Polyhedron& q, const FacetInequality& facet) {
  const Polyhedron cone = recession_cone(q);
  try {
    FaceNormals fn = exposed_face_normals(cone, facet.normal);
    return {std::move(fn.face), std::move(fn.normals), fn.codim};
  } catch (const InvalidObjective&) {
    throw InvalidFacet("c·x <= 0 is not valid on rec(Q) for c = " + to_string(facet.normal));
  }
}

std::optional<Integer> big_m(const Polyhedron& q, const FacetInequality& facet,
                             const RatVector& w) {
  const Polyhedron violating = restrict(q, {at_least(facet)});
  if (violating.is_empty()) return std::nullopt;
  const auto lo = minimize(violating, w);
  const auto hi = maximize(q, w);
  if (!lo || !hi) throw UnboundedBigM("unbounded optimum for w = " + to_string(w));
  Integer m = 0;
  m = std::max(m, ceil(-*lo));
  m = std::max(m, ceil(*hi));
  return m;
}

std::optional<DirectionSet> build_directions(const Polyhedron& q, const FacetInequality& facet) {
  if (restrict(q, {at_least(facet)}).is_empty()) return std::nullopt;
  const std::size_t n = q.dim();
  DirectionSet out;
  out.facet = facet;
  out.face = recession_face(q, facet);
  out.k = out.face.codim;
  const IntMatrix in_cone = basis_in_cone(out.face.normals, n);
  out.basis = extend_to_lattice_basis(in_cone, n);
  out.directions.push_back(facet.normal);
  for (std::size_t i = 0; i < out.k; ++i) {
    const RatVector w = to_rational(out.basis.rows()[i]);
    const auto m = big_m(q, facet, w);
    out.big_m.push_back(*m);
    const Rational factor = 2 * Rational(*m) + 1;
    out.directions.push_back(add(scaled(out.directions.back(), factor), w));
  }
  return out;
}

void detect_stabilization(ClosureTrace& trace) {
  const std::size_t nd = trace.directions.size();
  trace.gamma.assign(nd, std::nullopt);
  trace.settle_time.assign(nd, std::nullopt);
  trace.settle_all.reset();
  if (trace.bounds.empty() || trace.empty_at) return;
  const std::size_t last = trace.last_step();
  bool all = true;
  std::size_t t_all = 0;
  for (std::size_t j = 0; j < nd; ++j) {
    const Rational& u = trace.bounds[last][j];
    const bool settled = is_integral(u) &&
                         ((last >= 1 && trace.bounds[last - 1][j] == u) || trace.fixpoint);
    if (!settled) {
      all = false;
      continue;
    }
    std::size_t t = last;
    while (t > 0 && trace.bounds[t - 1][j] == u) --t;
    trace.gamma[j] = u.get_num();
    trace.settle_time[j] = t;
    t_all = std::max(t_all, t);
  }
  if (all) trace.settle_all = t_all;
}

ClosureTrace trace_bounds(const Polyhedron& q, const DirectionSet& d, std::size_t steps) {
  ClosureTrace trace;
  trace.directions = d.directions;
  const DirectionList list = d.as_list();
  Polyhedron s = q;
  for (std::size_t t = 0; t <= steps; ++t) {
    if (s.is_empty()) {
      trace.empty_at = t;
      break;
    }
    if (trace.fixpoint) {
      trace.bounds.push_back(trace.bounds.back());
      continue;
    }
    trace.bounds.push_back(bounds_row(s, trace.directions));
    if (t == steps) break;
    Polyhedron next = d_set_closure(s, list);
    if (next == s) trace.fixpoint = true;
    s = std::move(next);
  }
  detect_stabilization(trace);
  return trace;
}

bool verify_unit_drop(const ClosureTrace& trace) {
  const std::size_t rows = trace.bounds.size();
  for (std::size_t j = 0; j < trace.directions.size(); ++j) {
    for (std::size_t t = 0; t + 2 < rows; ++t) {
      const auto& u = trace.bounds;
      if (!(u[t + 1][j] < u[t][j])) continue;
      const bool next_drop = u[t + 2][j] <= u[t][j] - 1;
      const bool prev_drop = t == 0 || u[t + 1][j] <= u[t - 1][j] - 1;
      if (!next_drop && !prev_drop) return false;
    }
  }
  return true;
}

bool verify_nested_levels(const Polyhedron& q, const DirectionSet& d, const ClosureTrace& trace) {
  if (!trace.settle_all) throw NotStabilized("bounds have not settled within the run");
  const std::size_t step = *trace.settle_all + 1;
  const Polyhedron s = iterate_closure(q, d.as_list(), step);
  if (s.is_empty()) return true;
  for (std::size_t i = 1; i < d.directions.size(); ++i) {
    const Rational gamma_i(*trace.gamma[i]);
    const Rational gamma_prev(*trace.gamma[i - 1]);
    const Polyhedron top = restrict(s, {}, {LinIneq{d.directions[i], gamma_i}});
    if (top.is_empty()) return false;
    const LPResult hi = solve_lp(top, d.directions[i - 1], Sense::Maximize);
    const LPResult lo = solve_lp(top, d.directions[i - 1], Sense::Minimize);
    if (hi.status != LPStatus::Optimal || lo.status != LPStatus::Optimal) return false;
    if (hi.value != gamma_prev || lo.value != gamma_prev) return false;
  }
  return true;
}

RatVector recover_integral_point(const RatVector& x_star, const LatticeBasis& w,
                                 std::size_t k, const Polyhedron& face,
                                 const Polyhedron& q) {
  const std::size_t n = x_star.size();
  const RatMatrix rows = to_rational(w.rows());
  for (std::size_t i = 0; i < k; ++i) {
    if (!is_integral(dot(rows[i], x_star))) {
      throw NoSolution("w_" + std::to_string(i + 1) + "·x* is not integral");
    }
  }
  RatVector point = x_star;
  if (k < n) {
    RatMatrix spanning = face.vrep().rays;
    spanning.insert(spanning.end(), face.vrep().lineality.begin(), face.vrep().lineality.end());
    const RatMatrix basis = rref(spanning).rows;
    if (basis.size() != n - k) throw NoSolution("face dimension differs from n - k");
    // r = Σ μ_j basis_j with w_i·(x* + r) = ⌈w_i·x*⌉ for i > k.
    RatMatrix sys;
    RatVector rhs;
    for (std::size_t i = k; i < n; ++i) {
      RatVector row;
      for (const auto& f : basis) row.push_back(dot(rows[i], f));
      sys.push_back(std::move(row));
      const Rational level = dot(rows[i], x_star);
      rhs.push_back(Rational(ceil(level)) - level);
    }
    const auto mu = solve(sys, rhs, basis.size());
    if (!mu) throw NoSolution("no shift along the face reaches integral levels");
    RatVector r = zero_vector(n);
    for (std::size_t j = 0; j < basis.size(); ++j) r = add(r, scaled(basis[j], (*mu)[j]));
    // Push r into the face along an integral interior direction.
    RatVector inner = zero_vector(n);
    for (const auto& ray : face.vrep().rays) inner = add(inner, ray);
    Integer shift = 0;
    for (const auto& h : face.hrep().inequalities) {
      const Rational hr = dot(h.coeffs, r);
      const Rational hf = dot(h.coeffs, inner);
      if (sgn(hr) <= 0) continue;
      if (sgn(hf) >= 0) throw NoSolution("shift cannot be moved into the face");
      shift = std::max(shift, ceil(hr / -hf));
    }
    r = add(r, scaled(inner, Rational(shift)));
    point = add(x_star, r);
  }
  if (!is_integral(point)) throw NoSolution("recovered point is not integral");
  if (!contains(q, point)) throw PointNotInQ("recovered point " + to_string(point) + " is not in Q");
  return point;
}

FacetCertificate certify_facet(const Polyhedron& q, const FacetInequality& facet,
                               const CertifyOptions& options) {
  FacetCertificate cert;
  cert.facet = facet;
  cert.directions = build_directions(q, facet);
  if (!cert.directions) {
    cert.status = FacetStatus::AlreadyValid;
    return cert;
  }
  const DirectionSet& ds = *cert.directions;
  const DirectionList list = ds.as_list();
  ClosureTrace& trace = cert.trace;
  trace.directions = ds.directions;
  const Rational alpha(facet.rhs);

  Polyhedron s = q;
  std::size_t t = 0;
  while (true) {
    if (s.is_empty()) {
      trace.empty_at = t;
      break;
    }
    trace.bounds.push_back(bounds_row(s, trace.directions));
    if (trace.bounds.back().front() <= alpha) break;
    if (t == options.cap) {
      detect_stabilization(trace);
      throw CapExceeded(options.cap, trace);
    }
    s = d_set_closure(s, list);
    ++t;
    if (options.size_budget != 0) {
      const std::size_t bits = encoding_bits(s);
      if (bits > options.size_budget) throw BudgetExceeded(options.size_budget, bits, trace);
    }
  }
  cert.iterations = t;

  if (!s.is_empty()) {
    for (std::size_t extra = 0; extra < options.fixpoint_window; ++extra) {
      if (s.vrep().vertices.size() > options.fixpoint_vertex_budget) break;
      if (options.size_budget != 0 && encoding_bits(s) > options.size_budget) break;
      Polyhedron next = d_set_closure(s, list);
      if (next == s) {
        trace.fixpoint = true;
        break;
      }
      s = std::move(next);
      if (s.is_empty()) {
        trace.empty_at = trace.bounds.size();
        break;
      }
      trace.bounds.push_back(bounds_row(s, trace.directions));
    }
  }
  detect_stabilization(trace);
  cert.unit_drop = verify_unit_drop(trace);
  if (!cert.unit_drop) throw Unverified("bound trace violates the two-step unit drop");

  if (trace.fixpoint && trace.settle_all) {
    cert.nested_levels = verify_nested_levels(q, ds, trace);
    if (*cert.nested_levels) {
      const Polyhedron settled = iterate_closure(q, list, *trace.settle_all + 1);
      const LPResult top = solve_lp(settled, ds.directions.back(), Sense::Maximize);
      cert.integral_point =
          recover_integral_point(top.witness, ds.basis, ds.k, ds.face.face, q);
      if (dot(facet.normal, *cert.integral_point) != Rational(*trace.gamma.front())) {
        throw Unverified("recovered lattice point misses the level gamma(c)");
      }
    }
  }
  return cert;
}

RankCertificate certify(const Polyhedron& q, const CertifyOptions& options) {
  RankCertificate out;
  out.combined = DirectionList(q.dim(), {});
  for (const auto& row : facet_system(q).rows()) {
    FacetCertificate fc = certify_facet(q, row, options);
    if (fc.directions) out.combined = out.combined.merged(fc.directions->as_list());
    out.rounds = std::max(out.rounds, fc.iterations);
    out.per_facet.push_back(std::move(fc));
  }
  Polyhedron reached = q;
  for (std::size_t t = 0; t < out.rounds; ++t) {
    Polyhedron next = d_set_closure(reached, out.combined);
    if (next == reached) break;
    reached = std::move(next);
    if (options.size_budget != 0) {
      const std::size_t bits = encoding_bits(reached);
      if (bits > options.size_budget) throw BudgetExceeded(options.size_budget, bits, {});
    }
  }
  out.verified = reached == integer_hull(q);
  if (!out.verified) {
    throw Unverified("iterate " + std::to_string(out.rounds) +
                     " of the combined closure differs from the integer hull");
  }
  return out;
}

}  // namespace splitrank
