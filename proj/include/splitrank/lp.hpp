#pragma once

// Exact rational linear programming: two-phase primal simplex with Bland's
// rule on the standard-form lift x = u - v of an inequality system.

#include "splitrank/representation.hpp"

namespace splitrank {

enum class Sense { Maximize, Minimize };
enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;      // meaningful when Optimal
  RatVector witness;   // optimal point (a vertex when one exists) or improving ray
  // Dual certificate of an Optimal result, for the objective written as a
  // maximization (obj for Maximize, -obj for Minimize): ineq_duals >= 0 and
  //   Σ y_i a_i + Σ z_j e_j = obj',  Σ y_i b_i + Σ z_j f_j = value'.
  RatVector ineq_duals;
  RatVector eq_duals;
};

LPResult solve_lp(const HRep& system, const RatVector& objective, Sense sense);

/// Phase 1 only.
bool is_feasible(const HRep& system);

/// Check an Optimal result's dual certificate against `system`.
bool verify_duals(const HRep& system, const RatVector& objective, Sense sense,
                  const LPResult& result);

}  // namespace splitrank
