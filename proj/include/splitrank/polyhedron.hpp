#pragma once

// Exact rational polyhedra with canonical H- and V-representations kept side
// by side, converted with the double description method.

#include <cstddef>
#include <optional>
#include <vector>

#include "splitrank/lp.hpp"
#include "splitrank/representation.hpp"

namespace splitrank {

/// Generators of {y : A y <= 0, E y = 0}: a lineality basis and the extreme
/// rays modulo lineality. Rows are processed in the order given; two rays are
/// adjacent when the processed rows tight at both have rank m - dim(L) - 2.
struct ConeGenerators {
  RatMatrix lineality;
  RatMatrix rays;
};
ConeGenerators cone_generators(std::size_t m, const RatMatrix& ineq_rows,
                               const RatMatrix& eq_rows);

/// Minimal canonical V-representation of a raw H-representation. An empty
/// set yields an empty VRep.
VRep hrep_to_vrep(const HRep& raw);

/// Canonical irredundant H-representation of conv(V) + cone(R) + span(L).
HRep vrep_to_hrep(std::size_t dim, const VRep& raw);

/// A rational polyhedron. Both representations are canonical:
///  - equalities are the reduced row echelon basis of the affine hull, each
///    row scaled to coprime integers;
///  - inequalities are the facets, reduced modulo the equalities, scaled to
///    coprime integer coefficients and sorted with canonical_less;
///  - the empty set is the single row 0·x <= -1;
///  - vertices and rays are reduced modulo the lineality basis.
/// Equal point sets therefore compare equal with operator==.
class Polyhedron {
 public:
  static Polyhedron from_hrep(const HRep& raw);
  static Polyhedron from_vrep(std::size_t dim, const VRep& raw);
  static Polyhedron empty(std::size_t dim);
  static Polyhedron universe(std::size_t dim);

  std::size_t dim() const { return h_.dim; }
  bool is_empty() const { return v_.empty(); }
  bool is_bounded() const { return v_.rays.empty() && v_.lineality.empty(); }
  /// Dimension of the affine hull; -1 for the empty set.
  long affine_dimension() const;

  const HRep& hrep() const { return h_; }
  const VRep& vrep() const { return v_; }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) { return a.h_ == b.h_; }

 private:
  Polyhedron(HRep h, VRep v) : h_(std::move(h)), v_(std::move(v)) {}
  HRep h_;
  VRep v_;
};

Polyhedron canonicalize(const std::vector<LinIneq>& inequalities, std::size_t dim,
                        const std::vector<LinIneq>& equalities = {});

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);

/// P ∩ {extra inequalities} ∩ {extra equalities}.
Polyhedron restrict(const Polyhedron& p, const std::vector<LinIneq>& inequalities,
                    const std::vector<LinIneq>& equalities = {});

/// Closed convex hull of P ∪ Q.
Polyhedron conv_union(const Polyhedron& p, const Polyhedron& q);
Polyhedron conv_union(const std::vector<Polyhedron>& parts, std::size_t dim);

/// {x : Ax <= 0, Ex = 0}. Throws EmptyPolyhedron.
Polyhedron recession_cone(const Polyhedron& p);

/// Total bit length of the numerators and denominators in the V-rep.
std::size_t encoding_bits(const Polyhedron& p);

enum class Relation { Equal, SubsetStrict, SupersetStrict, Incomparable };
bool is_subset(const Polyhedron& p, const Polyhedron& q);
Relation relate(const Polyhedron& p, const Polyhedron& q);
bool contains(const Polyhedron& p, const RatVector& x);

/// sup of obj·x over a nonempty P from its generators; nullopt when +∞.
std::optional<Rational> maximize(const Polyhedron& p, const RatVector& obj);
std::optional<Rational> minimize(const Polyhedron& p, const RatVector& obj);

/// Simplex on the canonical H-representation.
LPResult solve_lp(const Polyhedron& p, const RatVector& obj, Sense sense);

/// The face F = {x ∈ K : c·x = 0} of a cone K on which c·x <= 0 is valid,
/// with normals g_1..g_k (k = n - dim F) taken greedily from K's tight rows in
/// canonical order (equalities first, + before -), so that each g_i·x <= 0 is
/// valid on K and F = K ∩ {G x = 0}.
struct FaceNormals {
  Polyhedron face;
  RatMatrix normals;
  std::size_t codim = 0;
};
/// Throws InvalidObjective if c·x <= 0 is not valid on K, EmptyPolyhedron
/// if K is empty, and Error if K is not a cone.
FaceNormals exposed_face_normals(const Polyhedron& cone, const RatVector& c);

}  // namespace splitrank
