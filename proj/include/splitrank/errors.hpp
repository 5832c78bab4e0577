#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace splitrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPLITRANK_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  };

SPLITRANK_DEFINE_ERROR(ParseError)
SPLITRANK_DEFINE_ERROR(ZeroVector)
SPLITRANK_DEFINE_ERROR(RankDeficient)
SPLITRANK_DEFINE_ERROR(DimensionMismatch)
SPLITRANK_DEFINE_ERROR(NotIntegral)
SPLITRANK_DEFINE_ERROR(EmptyPolyhedron)
SPLITRANK_DEFINE_ERROR(InvalidObjective)
SPLITRANK_DEFINE_ERROR(UnboundedInput)
SPLITRANK_DEFINE_ERROR(NonIntegralOffset)
SPLITRANK_DEFINE_ERROR(UnboundedBigM)
SPLITRANK_DEFINE_ERROR(InvalidFacet)
SPLITRANK_DEFINE_ERROR(NoSolution)
SPLITRANK_DEFINE_ERROR(PointNotInQ)
SPLITRANK_DEFINE_ERROR(NotStabilized)
SPLITRANK_DEFINE_ERROR(Unverified)

#undef SPLITRANK_DEFINE_ERROR

/// Raised when w_1..w_k do not generate Z^n ∩ span(w). `witness` is a
/// lattice point of the span that is not an integer combination of the rows.
class NotPrimitive : public Error {
 public:
  NotPrimitive(const std::string& what, std::vector<mpq_class> witness)
      : Error(what), witness(std::move(witness)) {}
  std::vector<mpq_class> witness;
};

enum class RangeSide { Below, Above };

/// {d·x : x ∈ Q} is unbounded on `side`.
class UnboundedDirectionRange : public Error {
 public:
  UnboundedDirectionRange(std::vector<mpq_class> direction, RangeSide side);
  std::vector<mpq_class> direction;
  RangeSide side;
};

}  // namespace splitrank
