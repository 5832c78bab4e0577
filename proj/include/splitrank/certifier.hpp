#pragma once

// Certificates of finite split rank. For every facet c·x <= alpha of the
// integer hull, a finite direction set D = {d_0, ..., d_k} is built from the
// face of rec(Q) exposed by c, and the D-closure is iterated until the facet
// inequality holds. Along the way the per-direction bounds
// u[t][d] = max{d·x : x in the t-th iterate} are recorded and checked.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splitrank/closure.hpp"
#include "splitrank/errors.hpp"
#include "splitrank/integer_hull.hpp"
#include "splitrank/lattice.hpp"

namespace splitrank {

inline constexpr std::size_t kDefaultIterationCap = 1000;

struct RecessionFace {
  Polyhedron face = Polyhedron::empty(0);  // {x ∈ rec(Q) : c·x = 0}
  RatMatrix normals;                       // g_1..g_k
  std::size_t codim = 0;                   // k = n - dim(face)
};

/// Throws InvalidFacet if c·x <= 0 is not valid on rec(Q).
RecessionFace recession_face(const Polyhedron& q, const FacetInequality& facet);

/// max{0, ⌈-min{w·x : x ∈ Q, c·x >= alpha}⌉, ⌈max{w·x : x ∈ Q}⌉}, or nullopt
/// when {x ∈ Q : c·x >= alpha} is empty (the facet already holds on Q).
/// Throws UnboundedBigM if either optimum is infinite.
std::optional<Integer> big_m(const Polyhedron& q, const FacetInequality& facet,
                             const RatVector& w);

struct DirectionSet {
  FacetInequality facet;
  RecessionFace face;
  LatticeBasis basis{IntMatrix{}};  // w_1..w_n, the first k in cone(g_1..g_k)
  std::size_t k = 0;
  IntVector big_m;                  // M_1..M_k
  RatMatrix directions;             // d_0 = c, d_i = (2 M_i + 1) d_{i-1} + w_i

  DirectionList as_list() const { return DirectionList(facet.normal.size(), directions); }
};

/// nullopt when the facet is already valid on Q.
std::optional<DirectionSet> build_directions(const Polyhedron& q, const FacetInequality& facet);

struct ClosureTrace {
  RatMatrix directions;                    // the d's, in DirectionSet order
  std::vector<RatVector> bounds;           // bounds[t][j] = u at step t for d_j
  std::optional<std::size_t> empty_at;     // first empty iterate, if any
  bool fixpoint = false;                   // last iterate equals its closure
  std::vector<std::optional<Integer>> gamma;            // stabilized values
  std::vector<std::optional<std::size_t>> settle_time;  // t_d
  std::optional<std::size_t> settle_all;                // t_D

  std::size_t last_step() const { return bounds.empty() ? 0 : bounds.size() - 1; }
};

/// Bounds over the iterates 0..steps of the D-closure (truncated at the
/// first empty iterate). A direction counts as stabilized when its bound is
/// integral and constant over at least the last two recorded steps.
ClosureTrace trace_bounds(const Polyhedron& q, const DirectionSet& d, std::size_t steps);

/// Fill in gamma / settle_time / settle_all from the bounds table.
void detect_stabilization(ClosureTrace& trace);

/// Strict decrease forces a unit drop within two steps:
/// u[t+1] < u[t]  ⇒  u[t+2] <= u[t] - 1  or  u[t+1] <= u[t-1] - 1.
/// Steps t with t + 2 beyond the trace are skipped; at t = 0 the second
/// alternative refers to a step before the start and is taken to hold.
bool verify_unit_drop(const ClosureTrace& trace);

/// For the iterate S at step t_D + 1 and i = 1..k: d_{i-1}·x is constant and
/// equal to gamma(d_{i-1}) on S ∩ {d_i·x = gamma(d_i)}. Throws NotStabilized
/// when the trace has not settled.
bool verify_nested_levels(const Polyhedron& q, const DirectionSet& d, const ClosureTrace& trace);

/// x* + r with r in the face F solving w_i·(x* + r) ∈ Z for i = k+1..n.
/// Throws NoSolution or PointNotInQ when the construction breaks down.
RatVector recover_integral_point(const RatVector& x_star, const LatticeBasis& w,
                                 std::size_t k, const Polyhedron& face,
                                 const Polyhedron& q);

enum class FacetStatus { Valid, AlreadyValid };

struct FacetCertificate {
  FacetInequality facet;
  std::optional<DirectionSet> directions;  // empty when AlreadyValid
  std::size_t iterations = 0;              // t*
  ClosureTrace trace;
  FacetStatus status = FacetStatus::Valid;
  bool unit_drop = true;
  std::optional<bool> nested_levels;            // set when the run reached a fixpoint
  std::optional<RatVector> integral_point; // lattice point of Q with c·x = gamma(c)
};

/// Raised when the iteration cap is hit before the facet holds.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t cap, ClosureTrace trace);
  std::size_t cap;
  ClosureTrace trace;
};

/// Raised when an iterate outgrows CertifyOptions::size_budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t budget, std::size_t bits, ClosureTrace trace);
  std::size_t budget;
  std::size_t bits;
  ClosureTrace trace;
};

struct CertifyOptions {
  std::size_t cap = kDefaultIterationCap;
  /// Extra closure rounds after t* spent looking for a fixpoint, which
  /// enables the stabilization checks.
  std::size_t fixpoint_window = 8;
  /// The search stops early once an iterate has more vertices than this.
  std::size_t fixpoint_vertex_budget = 64;
  /// Largest encoding_bits of any iterate; 0 means no limit.
  std::size_t size_budget = 0;
};

FacetCertificate certify_facet(const Polyhedron& q, const FacetInequality& facet,
                               const CertifyOptions& options = {});

struct RankCertificate {
  std::vector<FacetCertificate> per_facet;
  std::size_t rounds = 0;  // T = max t*
  DirectionList combined;
  bool verified = false;
};

/// Throws Unverified if the combined iterate differs from the integer hull.
RankCertificate certify(const Polyhedron& q, const CertifyOptions& options = {});

}  // namespace splitrank
