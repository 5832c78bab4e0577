#include "splitrank/polyhedron.hpp"

#include <algorithm>
#include <cstdint>

#include "splitrank/errors.hpp"

namespace splitrank {

namespace {

// Tight flags per processed inequality row, packed into words.
struct Bits {
  std::vector<std::uint64_t> words;
  std::size_t size = 0;

  void push_back(bool bit) {
    if (size % 64 == 0) words.push_back(0);
    if (bit) words.back() |= std::uint64_t{1} << (size % 64);
    ++size;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  static Bits meet(const Bits& a, const Bits& b) {
    Bits out;
    out.size = a.size;
    out.words.resize(a.words.size());
    for (std::size_t i = 0; i < a.words.size(); ++i) out.words[i] = a.words[i] & b.words[i];
    return out;
  }
  bool subset_of(const Bits& r) const {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i] & ~r.words[i]) return false;
    }
    return true;
  }
};

using Ints = std::vector<Integer>;

RatVector normalize(const RatVector& v) { return primitive_vector(v); }

struct Ray {
  Ints v;
  Bits zero;
};

Integer idot(const Ints& a, const Ints& b) {
  Integer out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// Divides out the content; v must be nonzero.
void make_primitive(Ints& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g != 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

// t·a − u·b, made primitive.
Ints combine(const Ints& a, const Integer& t, const Ints& b, const Integer& u) {
  Ints out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = t * a[i] - u * b[i];
  make_primitive(out);
  return out;
}

Ints integral_row(const RatVector& a) {
  const RatVector scaled_row = clear_denominators(a);
  Ints out;
  out.reserve(a.size());
  for (const auto& x : scaled_row) out.push_back(x.get_num());
  return out;
}

// Double description over integer vectors: generators are kept primitive,
// so every product stays in Z.
class DoubleDescription {
 public:
  explicit DoubleDescription(std::size_t m) : m_(m) {
    for (std::size_t i = 0; i < m; ++i) {
      Ints e(m, Integer(0));
      e[i] = 1;
      lineality_.push_back(std::move(e));
    }
  }

  void add_inequality(const RatVector& a) { add_row(integral_row(a), false); }
  void add_equality(const RatVector& a) { add_row(integral_row(a), true); }

  ConeGenerators result() const {
    ConeGenerators out;
    for (const auto& l : lineality_) out.lineality.push_back(to_rational(l));
    for (const auto& r : rays_) out.rays.push_back(to_rational(r.v));
    return out;
  }

 private:
  // Removes a lineality vector not orthogonal to a, making every remaining
  // generator orthogonal to a, and returns it.
  std::optional<Ints> absorb_lineality(const Ints& a) {
    auto it = std::find_if(lineality_.begin(), lineality_.end(),
                           [&](const Ints& l) { return sgn(idot(a, l)) != 0; });
    if (it == lineality_.end()) return std::nullopt;
    Ints l0 = *it;
    lineality_.erase(it);
    Integer s0 = idot(a, l0);
    if (sgn(s0) < 0) {
      for (auto& x : l0) x = -x;
      s0 = -s0;
    }
    for (auto& l : lineality_) {
      const Integer s = idot(a, l);
      if (sgn(s) != 0) l = combine(l, s0, l0, s);
    }
    for (auto& r : rays_) {
      const Integer s = idot(a, r.v);
      if (sgn(s) != 0) r.v = combine(r.v, s0, l0, s);
    }
    return l0;  // a·l0 > 0
  }

  // Combinatorial test: p and q span a 2-face of the current cone iff
  // no third extreme ray is tight wherever both are.
  bool adjacent(std::size_t ip, std::size_t iq, const Bits& common) const {
    if (m_ < lineality_.size() + 2) return false;
    const std::size_t target = m_ - lineality_.size() - 2;
    if (common.count() + eq_rows_ < target) return false;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (i != ip && i != iq && common.subset_of(rays_[i].zero)) return false;
    }
    return true;
  }

  void add_row(const Ints& a, bool equality) {
    if (auto l0 = absorb_lineality(a)) {
      if (equality) {
        ++eq_rows_;
        return;
      }
      for (auto& x : *l0) x = -x;  // now a·l0 < 0
      for (auto& r : rays_) r.zero.push_back(true);
      Ray fresh{std::move(*l0), {}};
      for (std::size_t j = 0; j < ineq_rows_; ++j) fresh.zero.push_back(true);
      fresh.zero.push_back(false);
      ++ineq_rows_;
      rays_.push_back(std::move(fresh));
      return;
    }
    std::vector<Integer> s(rays_.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      s[i] = idot(a, rays_[i].v);
      if (sgn(s[i]) > 0) plus.push_back(i);
      if (sgn(s[i]) < 0) minus.push_back(i);
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (sgn(s[i]) == 0 || (!equality && sgn(s[i]) < 0)) next.push_back(rays_[i]);
    }
    for (auto ip : plus) {
      for (auto iq : minus) {
        const Ray& p = rays_[ip];
        const Ray& q = rays_[iq];
        Bits common = Bits::meet(p.zero, q.zero);
        if (!adjacent(ip, iq, common)) continue;
        // s[ip] > 0 > s[iq]: s[ip]·q − s[iq]·p lies on a·x = 0.
        Ray combo{combine(q.v, s[ip], p.v, s[iq]), std::move(common)};
        next.push_back(std::move(combo));
      }
    }
    if (!equality) {
      for (auto& r : next) r.zero.push_back(sgn(idot(a, r.v)) == 0);
      ++ineq_rows_;
    } else {
      ++eq_rows_;
    }
    rays_ = std::move(next);
  }

  std::size_t m_;
  std::vector<Ints> lineality_;
  std::vector<Ray> rays_;
  std::size_t ineq_rows_ = 0;
  std::size_t eq_rows_ = 0;
};

RatVector homogenize(const RatVector& coeffs, const Rational& last) {
  RatVector out = coeffs;
  out.push_back(last);
  return out;
}

bool row_less(const LinIneq& a, const LinIneq& b) {
  if (a.coeffs != b.coeffs) return canonical_less(a.coeffs, b.coeffs);
  return a.rhs > b.rhs;
}

// Subtract multiples of reduced echelon rows (pivot entries 1) so that the
// pivot coordinates of v vanish.
void reduce_modulo(RatVector& v, const RowEchelon& basis) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    const std::size_t p = basis.pivots[i];
    if (sgn(v[p]) == 0) continue;
    const Rational f = v[p];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis.rows[i][j];
  }
}

void sort_unique(RatMatrix& rows) {
  std::sort(rows.begin(), rows.end(), canonical_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

VRep canonical_vrep(VRep raw) {
  VRep out;
  const RowEchelon lin = rref(raw.lineality);
  for (const auto& row : lin.rows) out.lineality.push_back(normalize(row));
  for (auto& v : raw.vertices) {
    reduce_modulo(v, lin);
    out.vertices.push_back(std::move(v));
  }
  for (auto& r : raw.rays) {
    reduce_modulo(r, lin);
    if (!is_zero(r)) out.rays.push_back(normalize(r));
  }
  sort_unique(out.vertices);
  sort_unique(out.rays);
  return out;
}

HRep empty_hrep(std::size_t dim) {
  HRep h;
  h.dim = dim;
  h.inequalities.push_back({zero_vector(dim), Rational(-1)});
  return h;
}

// Canonical form of an irredundant system without implicit equalities.
HRep canonical_hrep(std::size_t dim, const std::vector<LinIneq>& ineqs,
                    const std::vector<LinIneq>& eqs) {
  HRep out;
  out.dim = dim;
  RatMatrix eq_rows;
  for (const auto& e : eqs) eq_rows.push_back(homogenize(e.coeffs, e.rhs));
  const RowEchelon ech = rref(std::move(eq_rows), dim);
  const auto scale_row = [dim](RatVector row) {
    const RatVector coeffs(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dim));
    const RatVector prim = primitive_vector(coeffs);
    std::size_t j = 0;
    while (sgn(coeffs[j]) == 0) ++j;
    const Rational factor = prim[j] / coeffs[j];
    return LinIneq{prim, row[dim] * factor};
  };
  for (const auto& row : ech.rows) out.equalities.push_back(scale_row(row));
  for (const auto& ineq : ineqs) {
    RatVector row = homogenize(ineq.coeffs, ineq.rhs);
    reduce_modulo(row, ech);
    if (std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dim),
                    [](const Rational& x) { return sgn(x) == 0; })) {
      continue;  // implied by the equalities
    }
    out.inequalities.push_back(scale_row(std::move(row)));
  }
  std::sort(out.inequalities.begin(), out.inequalities.end(), row_less);
  out.inequalities.erase(std::unique(out.inequalities.begin(), out.inequalities.end()),
                         out.inequalities.end());
  return out;
}

void check_dim(const RatVector& v, std::size_t dim, const char* what) {
  if (v.size() != dim) throw DimensionMismatch(std::string(what) + ": expected length " +
                                               std::to_string(dim));
}

bool satisfies_ineq(const VRep& v, const LinIneq& row) {
  for (const auto& x : v.vertices) {
    if (dot(row.coeffs, x) > row.rhs) return false;
  }
  for (const auto& r : v.rays) {
    if (sgn(dot(row.coeffs, r)) > 0) return false;
  }
  for (const auto& l : v.lineality) {
    if (sgn(dot(row.coeffs, l)) != 0) return false;
  }
  return true;
}

bool satisfies_eq(const VRep& v, const LinIneq& row) {
  for (const auto& x : v.vertices) {
    if (dot(row.coeffs, x) != row.rhs) return false;
  }
  for (const auto& r : v.rays) {
    if (sgn(dot(row.coeffs, r)) != 0) return false;
  }
  for (const auto& l : v.lineality) {
    if (sgn(dot(row.coeffs, l)) != 0) return false;
  }
  return true;
}

}  // namespace

ConeGenerators cone_generators(std::size_t m, const RatMatrix& ineq_rows,
                               const RatMatrix& eq_rows) {
  DoubleDescription dd(m);
  for (const auto& e : eq_rows) dd.add_equality(e);
  for (const auto& a : ineq_rows) dd.add_inequality(a);
  return dd.result();
}

VRep hrep_to_vrep(const HRep& raw) {
  const std::size_t n = raw.dim;
  RatMatrix eqs;
  for (const auto& e : raw.equalities) {
    check_dim(e.coeffs, n, "equality");
    eqs.push_back(homogenize(e.coeffs, -e.rhs));
  }
  std::vector<LinIneq> sorted = raw.inequalities;
  std::sort(sorted.begin(), sorted.end(), row_less);
  RatMatrix ineqs;
  ineqs.push_back(homogenize(zero_vector(n), Rational(-1)));  // λ >= 0
  for (const auto& a : sorted) {
    check_dim(a.coeffs, n, "inequality");
    ineqs.push_back(homogenize(a.coeffs, -a.rhs));
  }
  const ConeGenerators gens = cone_generators(n + 1, ineqs, eqs);
  VRep out;
  for (const auto& g : gens.rays) {
    const RatVector x(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n));
    if (sgn(g[n]) > 0) {
      out.vertices.push_back(scaled(x, 1 / g[n]));
    } else {
      out.rays.push_back(x);
    }
  }
  if (out.vertices.empty()) return {};
  for (const auto& l : gens.lineality) {
    out.lineality.emplace_back(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return canonical_vrep(std::move(out));
}

HRep vrep_to_hrep(std::size_t dim, const VRep& raw) {
  if (raw.vertices.empty()) return empty_hrep(dim);
  RatMatrix ineqs, eqs;
  for (const auto& v : raw.vertices) {
    check_dim(v, dim, "vertex");
    ineqs.push_back(homogenize(v, Rational(-1)));
  }
  for (const auto& r : raw.rays) {
    check_dim(r, dim, "ray");
    ineqs.push_back(homogenize(r, Rational(0)));
  }
  for (const auto& l : raw.lineality) {
    check_dim(l, dim, "lineality");
    eqs.push_back(homogenize(l, Rational(0)));
  }
  const ConeGenerators polar = cone_generators(dim + 1, ineqs, eqs);
  std::vector<LinIneq> facets, affine;
  for (const auto& g : polar.lineality) {
    affine.push_back({RatVector(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(dim)), g[dim]});
  }
  for (const auto& g : polar.rays) {
    RatVector a(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(dim));
    if (is_zero(a)) continue;  // 0 <= β, implied
    facets.push_back({std::move(a), g[dim]});
  }
  return canonical_hrep(dim, facets, affine);
}

Polyhedron Polyhedron::from_hrep(const HRep& raw) {
  VRep v = hrep_to_vrep(raw);
  if (v.empty()) return empty(raw.dim);
  HRep h = vrep_to_hrep(raw.dim, v);
  return Polyhedron(std::move(h), std::move(v));
}

Polyhedron Polyhedron::from_vrep(std::size_t dim, const VRep& raw) {
  if (raw.vertices.empty()) return empty(dim);
  HRep h = vrep_to_hrep(dim, raw);
  VRep v = hrep_to_vrep(h);
  return Polyhedron(std::move(h), std::move(v));
}

Polyhedron Polyhedron::empty(std::size_t dim) { return Polyhedron(empty_hrep(dim), VRep{}); }

Polyhedron Polyhedron::universe(std::size_t dim) {
  HRep h;
  h.dim = dim;
  VRep v;
  v.vertices.push_back(zero_vector(dim));
  for (std::size_t i = 0; i < dim; ++i) v.lineality.push_back(unit_vector(dim, i));
  return Polyhedron(std::move(h), std::move(v));
}

long Polyhedron::affine_dimension() const {
  if (is_empty()) return -1;
  return static_cast<long>(h_.dim) - static_cast<long>(h_.equalities.size());
}

Polyhedron canonicalize(const std::vector<LinIneq>& inequalities, std::size_t dim,
                        const std::vector<LinIneq>& equalities) {
  return Polyhedron::from_hrep(HRep{dim, inequalities, equalities});
}

Polyhedron restrict(const Polyhedron& p, const std::vector<LinIneq>& inequalities,
                    const std::vector<LinIneq>& equalities) {
  if (p.is_empty()) return p;
  bool unchanged = true;
  for (const auto& row : inequalities) {
    check_dim(row.coeffs, p.dim(), "restrict");
    unchanged = unchanged && satisfies_ineq(p.vrep(), row);
  }
  for (const auto& row : equalities) {
    check_dim(row.coeffs, p.dim(), "restrict");
    unchanged = unchanged && satisfies_eq(p.vrep(), row);
  }
  if (unchanged) return p;
  HRep h = p.hrep();
  h.inequalities.insert(h.inequalities.end(), inequalities.begin(), inequalities.end());
  h.equalities.insert(h.equalities.end(), equalities.begin(), equalities.end());
  return Polyhedron::from_hrep(h);
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("intersect: dimensions differ");
  if (q.is_empty()) return q;
  return restrict(p, q.hrep().inequalities, q.hrep().equalities);
}

Polyhedron conv_union(const std::vector<Polyhedron>& parts, std::size_t dim) {
  VRep all;
  for (const auto& part : parts) {
    if (part.dim() != dim) throw DimensionMismatch("conv_union: dimensions differ");
    const VRep& v = part.vrep();
    all.vertices.insert(all.vertices.end(), v.vertices.begin(), v.vertices.end());
    all.rays.insert(all.rays.end(), v.rays.begin(), v.rays.end());
    all.lineality.insert(all.lineality.end(), v.lineality.begin(), v.lineality.end());
  }
  return Polyhedron::from_vrep(dim, all);
}

Polyhedron conv_union(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("conv_union: dimensions differ");
  if (p.is_empty()) return q;
  if (q.is_empty()) return p;
  return conv_union(std::vector<Polyhedron>{p, q}, p.dim());
}

std::size_t encoding_bits(const Polyhedron& p) {
  std::size_t bits = 0;
  const VRep& v = p.vrep();
  for (const RatMatrix* m : {&v.vertices, &v.rays, &v.lineality}) {
    for (const auto& row : *m) {
      for (const auto& x : row) {
        bits += mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
      }
    }
  }
  return bits;
}

Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty()) throw EmptyPolyhedron("recession_cone of the empty set");
  HRep h = p.hrep();
  for (auto& row : h.inequalities) row.rhs = 0;
  for (auto& row : h.equalities) row.rhs = 0;
  return Polyhedron::from_hrep(h);
}

bool is_subset(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("is_subset: dimensions differ");
  if (p.is_empty()) return true;
  if (q.is_empty()) return false;
  for (const auto& row : q.hrep().inequalities) {
    if (!satisfies_ineq(p.vrep(), row)) return false;
  }
  for (const auto& row : q.hrep().equalities) {
    if (!satisfies_eq(p.vrep(), row)) return false;
  }
  return true;
}

Relation relate(const Polyhedron& p, const Polyhedron& q) {
  const bool sub = is_subset(p, q);
  const bool sup = is_subset(q, p);
  if (sub && sup) return Relation::Equal;
  if (sub) return Relation::SubsetStrict;
  if (sup) return Relation::SupersetStrict;
  return Relation::Incomparable;
}

bool contains(const Polyhedron& p, const RatVector& x) {
  check_dim(x, p.dim(), "contains");
  if (p.is_empty()) return false;
  for (const auto& row : p.hrep().inequalities) {
    if (dot(row.coeffs, x) > row.rhs) return false;
  }
  for (const auto& row : p.hrep().equalities) {
    if (dot(row.coeffs, x) != row.rhs) return false;
  }
  return true;
}

std::optional<Rational> maximize(const Polyhedron& p, const RatVector& obj) {
  check_dim(obj, p.dim(), "maximize");
  if (p.is_empty()) throw EmptyPolyhedron("maximize over the empty set");
  const VRep& v = p.vrep();
  for (const auto& l : v.lineality) {
    if (sgn(dot(obj, l)) != 0) return std::nullopt;
  }
  for (const auto& r : v.rays) {
    if (sgn(dot(obj, r)) > 0) return std::nullopt;
  }
  Rational best = dot(obj, v.vertices.front());
  for (const auto& x : v.vertices) best = std::max(best, Rational(dot(obj, x)));
  return best;
}

std::optional<Rational> minimize(const Polyhedron& p, const RatVector& obj) {
  const auto m = maximize(p, negated(obj));
  if (!m) return std::nullopt;
  return Rational(-*m);
}

LPResult solve_lp(const Polyhedron& p, const RatVector& obj, Sense sense) {
  return solve_lp(p.hrep(), obj, sense);
}

FaceNormals exposed_face_normals(const Polyhedron& cone, const RatVector& c) {
  check_dim(c, cone.dim(), "exposed_face_normals");
  if (cone.is_empty()) throw EmptyPolyhedron("exposed_face_normals: empty cone");
  const std::size_t n = cone.dim();
  if (cone.vrep().vertices.size() != 1 || !is_zero(cone.vrep().vertices.front())) {
    throw Error("exposed_face_normals: input is not a cone");
  }
  const auto top = maximize(cone, c);
  if (!top || sgn(*top) > 0) {
    throw InvalidObjective("c·x <= 0 is not valid on the cone");
  }
  FaceNormals out{restrict(cone, {}, {LinIneq{c, Rational(0)}}), {}, 0};
  RatMatrix candidates;
  for (const auto& e : cone.hrep().equalities) {
    candidates.push_back(e.coeffs);
    candidates.push_back(negated(e.coeffs));
  }
  for (const auto& a : cone.hrep().inequalities) candidates.push_back(a.coeffs);
  out.codim = n - static_cast<std::size_t>(out.face.affine_dimension());
  const VRep& fv = out.face.vrep();
  for (const auto& g : candidates) {
    if (out.normals.size() == out.codim) break;
    const bool tight =
        std::all_of(fv.rays.begin(), fv.rays.end(),
                    [&](const RatVector& r) { return sgn(dot(g, r)) == 0; }) &&
        std::all_of(fv.lineality.begin(), fv.lineality.end(),
                    [&](const RatVector& l) { return sgn(dot(g, l)) == 0; });
    if (!tight) continue;
    RatMatrix trial = out.normals;
    trial.push_back(g);
    if (rank(trial) == trial.size()) out.normals.push_back(g);
  }
  if (out.normals.size() != out.codim) throw Error("exposed_face_normals: rank defect");
  return out;
}

}  // namespace splitrank
