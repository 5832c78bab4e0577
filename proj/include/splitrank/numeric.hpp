#pragma once

// Exact scalars, vectors and dense matrices over Q.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace splitrank {

using Integer = mpz_class;
using Rational = mpq_class;  // always canonical: gcd(num, den) = 1, den > 0

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Text form of a rational: "p", "-p" or "p/q" with q > 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
std::string to_string(const RatVector& v);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

bool is_integral(const Rational& value);
bool is_integral(const RatVector& v);
bool is_zero(const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scaled(const RatVector& v, const Rational& factor);
RatVector negated(const RatVector& v);
RatVector unit_vector(std::size_t n, std::size_t i);
RatVector zero_vector(std::size_t n);

RatVector to_rational(const IntVector& v);
RatMatrix to_rational(const IntMatrix& m);
IntVector to_integer(const RatVector& v);  // throws NotIntegral
IntMatrix to_integer(const RatMatrix& m);

/// λ·v with λ > 0 chosen so the entries are coprime integers.
/// Throws ZeroVector for v = 0.
RatVector primitive_vector(const RatVector& v);

/// Positive multiple of v with integer entries (not necessarily coprime).
RatVector clear_denominators(const RatVector& v);

/// Canonical ordering used for rows, directions and generators throughout:
/// lexicographically larger vectors come first.
bool canonical_less(const RatVector& a, const RatVector& b);

struct RowEchelon {
  RatMatrix rows;                    // reduced rows, pivot entries equal to 1
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form; pivots are searched only in the first
/// `pivot_columns` columns (all columns when 0).
RowEchelon rref(RatMatrix rows, std::size_t pivot_columns = 0);

std::size_t rank(const RatMatrix& rows);

/// Basis of {x : A x = 0} for an A with `ncols` columns.
RatMatrix null_space(const RatMatrix& rows, std::size_t ncols);

/// Some solution x of A x = b, or nullopt if the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& rows, const RatVector& rhs,
                               std::size_t ncols);

RatMatrix transpose(const RatMatrix& m, std::size_t ncols);

}  // namespace splitrank
