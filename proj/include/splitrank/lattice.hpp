#pragma once

// Integral lattice routines: Hermite normal form, determinants, completion of
// primitive vector systems to bases of Z^n, and lattice bases inside cones.

#include <cstddef>

#include "splitrank/numeric.hpp"

namespace splitrank {

/// Row-style Hermite normal form H = U·W of a full-row-rank integer matrix.
/// H is in upper echelon form with positive pivots, and every entry above a
/// pivot lies in [0, pivot). U is unimodular.
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
};

/// Throws RankDeficient if the rows of W are linearly dependent.
HermiteForm hnf(const IntMatrix& W);

/// Same reduction without the rank precondition. Zero rows of H sit at the
/// bottom; `rank` counts the nonzero ones.
struct HermiteReduction {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};
HermiteReduction hermite_reduce(const IntMatrix& W);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& square);

/// Inverse of a unimodular matrix; throws Error if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& square);

/// Basis (rows) of the lattice {y ∈ Z^ncols : A y = 0}.
IntMatrix integer_kernel(const IntMatrix& A, std::size_t ncols);

/// A unimodular n×n matrix, rows w_1..w_n.
class LatticeBasis {
 public:
  /// Throws Error unless `rows` is square with determinant ±1.
  explicit LatticeBasis(IntMatrix rows);
  const IntMatrix& rows() const { return rows_; }
  std::size_t dim() const { return rows_.size(); }

 private:
  IntMatrix rows_;
};

/// Complete w_1..w_k (n columns) to a basis of Z^n, keeping the given rows
/// first and verbatim. Throws RankDeficient for dependent rows and
/// NotPrimitive (with a witness) if Z^n ∩ span(w) is larger than the integer
/// span of w.
LatticeBasis extend_to_lattice_basis(const IntMatrix& w, std::size_t n);

/// Integral w_1..w_k inside cone(g_1..g_k) forming a basis of Z^n ∩ span(g).
///
/// Starts from the primitive generators of the simplicial cone and, as long
/// as their half-open parallelepiped holds a nonzero lattice point p, swaps p
/// in for the generator with the largest coefficient of p. Each swap divides
/// the sublattice index by that coefficient, so the loop ends with a
/// lattice-free parallelepiped. The rows are returned in canonical order.
IntMatrix basis_in_cone(const RatMatrix& generators, std::size_t n);

/// Lattice points of Z^n ∩ span(h) in {Σ λ_i h_i : 0 ≤ λ_i < 1}, zero
/// excluded, found by coset enumeration. At most `limit` points are
/// returned (0 means no limit).
RatMatrix parallelepiped_lattice_points(const IntMatrix& h, std::size_t n,
                                        std::size_t limit = 0);

}  // namespace splitrank
