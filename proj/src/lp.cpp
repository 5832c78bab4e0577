#include "splitrank/lp.hpp"

#include <cassert>
#include <functional>
#include <optional>

#include "splitrank/errors.hpp"

namespace splitrank {

namespace {

// Dense simplex tableau for: maximize c·y subject to M y = h, y >= 0.
struct Tableau {
  RatMatrix rows;                  // each row: coefficients, then rhs
  RatVector reduced;               // reduced costs, then objective value
  std::vector<std::size_t> basis;  // basic column of each row

  std::size_t cols() const { return reduced.size() - 1; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) {
      if (sgn(x) != 0) x *= inv;
    }
    const auto eliminate = [&](RatVector& target) {
      if (sgn(target[c]) == 0) return;
      const Rational f = target[c];
      for (std::size_t j = 0; j < target.size(); ++j) {
        if (sgn(rows[r][j]) != 0) target[j] -= f * rows[r][j];
      }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) eliminate(rows[i]);
    }
    eliminate(reduced);
    basis[r] = c;
  }

  void set_costs(const RatVector& cost) {
    const std::size_t n = cols();
    for (std::size_t j = 0; j <= n; ++j) {
      Rational z = j < n ? Rational(-cost[j]) : Rational(0);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(cost[basis[i]]) != 0 && sgn(rows[i][j]) != 0) z += cost[basis[i]] * rows[i][j];
      }
      reduced[j] = z;
    }
  }

  // Bland's rule. Returns the entering column of an unbounded direction, or
  // nullopt at optimality.
  std::optional<std::size_t> run(const std::function<bool(std::size_t)>& allowed) {
    const std::size_t n = cols();
    while (true) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (allowed(j) && sgn(reduced[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n) return std::nullopt;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        const Rational ratio = rows[i][n] / rows[i][enter];
        if (leave == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return enter;
      pivot(leave, enter);
    }
  }
};

struct Lifted {
  Tableau tab;
  std::size_t n = 0;       // original variables
  std::size_t m = 0;       // inequality rows
  std::size_t p = 0;       // equality rows
  std::vector<int> sign;   // row sign flips
  std::size_t art0 = 0;    // first artificial column
};

Lifted lift(const HRep& sys) {
  Lifted L;
  L.n = sys.dim;
  L.m = sys.inequalities.size();
  L.p = sys.equalities.size();
  const std::size_t R = L.m + L.p;
  L.art0 = 2 * L.n + L.m;
  const std::size_t N = L.art0 + R;
  L.tab.rows.assign(R, RatVector(N + 1, Rational(0)));
  L.tab.reduced.assign(N + 1, Rational(0));
  L.tab.basis.resize(R);
  L.sign.resize(R);
  for (std::size_t i = 0; i < R; ++i) {
    const LinIneq& row = i < L.m ? sys.inequalities[i] : sys.equalities[i - L.m];
    if (row.coeffs.size() != L.n) throw DimensionMismatch("solve_lp: row length");
    const int s = sgn(row.rhs) < 0 ? -1 : 1;
    L.sign[i] = s;
    RatVector& t = L.tab.rows[i];
    for (std::size_t j = 0; j < L.n; ++j) {
      t[j] = s * row.coeffs[j];
      t[L.n + j] = -t[j];
    }
    if (i < L.m) t[2 * L.n + i] = s;
    t[L.art0 + i] = 1;
    t[N] = s * row.rhs;
    L.tab.basis[i] = L.art0 + i;
  }
  return L;
}

// Phase 1. Returns false if infeasible; otherwise drives artificials out of
// the basis where possible. Artificials left basic sit on rows that are zero
// in every structural column, so they never move again.
bool phase_one(Lifted& L) {
  Tableau& tab = L.tab;
  RatVector cost(tab.cols(), Rational(0));
  for (std::size_t j = L.art0; j < tab.cols(); ++j) cost[j] = -1;
  tab.set_costs(cost);
  tab.run([](std::size_t) { return true; });
  if (sgn(tab.reduced.back()) < 0) return false;
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    if (tab.basis[i] < L.art0) continue;
    for (std::size_t j = 0; j < L.art0; ++j) {
      if (sgn(tab.rows[i][j]) != 0) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  return true;
}

RatVector basic_values(const Tableau& tab) {
  RatVector y(tab.cols(), Rational(0));
  for (std::size_t i = 0; i < tab.rows.size(); ++i) y[tab.basis[i]] = tab.rows[i].back();
  return y;
}

// Move an optimal point along the optimal face until it is a vertex, if the
// polyhedron has one.
RatVector to_vertex(const HRep& sys, RatVector x) {
  const std::size_t n = sys.dim;
  while (true) {
    RatMatrix tight;
    for (const auto& e : sys.equalities) tight.push_back(e.coeffs);
    for (const auto& r : sys.inequalities) {
      if (dot(r.coeffs, x) == r.rhs) tight.push_back(r.coeffs);
    }
    const RatMatrix free_dirs = null_space(tight, n);
    if (free_dirs.empty()) return x;
    const RatVector& z = free_dirs.front();
    std::optional<Rational> up, down;
    for (const auto& r : sys.inequalities) {
      const Rational az = dot(r.coeffs, z);
      if (sgn(az) == 0) continue;
      const Rational slack = r.rhs - dot(r.coeffs, x);
      if (sgn(az) > 0) {
        const Rational step = slack / az;
        if (!up || step < *up) up = step;
      } else {
        const Rational step = slack / -az;
        if (!down || step < *down) down = step;
      }
    }
    if (up) {
      x = add(x, scaled(z, *up));
    } else if (down) {
      x = sub(x, scaled(z, *down));
    } else {
      return x;  // z spans a lineality direction: no vertex exists
    }
  }
}

}  // namespace

LPResult solve_lp(const HRep& system, const RatVector& objective, Sense sense) {
  if (objective.size() != system.dim) throw DimensionMismatch("solve_lp: objective length");
  Lifted L = lift(system);
  LPResult result;
  if (!phase_one(L)) {
    result.status = LPStatus::Infeasible;
    return result;
  }
  const RatVector obj = sense == Sense::Maximize ? objective : negated(objective);
  RatVector cost(L.tab.cols(), Rational(0));
  for (std::size_t j = 0; j < L.n; ++j) {
    cost[j] = obj[j];
    cost[L.n + j] = -obj[j];
  }
  L.tab.set_costs(cost);
  const std::size_t art0 = L.art0;
  const auto unbounded = L.tab.run([art0](std::size_t j) { return j < art0; });
  if (unbounded) {
    RatVector y(L.tab.cols(), Rational(0));
    y[*unbounded] = 1;
    for (std::size_t i = 0; i < L.tab.rows.size(); ++i) {
      y[L.tab.basis[i]] -= L.tab.rows[i][*unbounded];
    }
    result.status = LPStatus::Unbounded;
    result.witness.resize(L.n);
    for (std::size_t j = 0; j < L.n; ++j) result.witness[j] = y[j] - y[L.n + j];
    return result;
  }
  const RatVector y = basic_values(L.tab);
  RatVector x(L.n);
  for (std::size_t j = 0; j < L.n; ++j) x[j] = y[j] - y[L.n + j];
  result.status = LPStatus::Optimal;
  result.witness = to_vertex(system, std::move(x));
  result.value = dot(objective, result.witness);
  result.ineq_duals.resize(L.m);
  result.eq_duals.resize(L.p);
  for (std::size_t i = 0; i < L.m + L.p; ++i) {
    const Rational pi = L.sign[i] * L.tab.reduced[art0 + i];
    if (i < L.m) {
      result.ineq_duals[i] = pi;
    } else {
      result.eq_duals[i - L.m] = pi;
    }
  }
  assert(verify_duals(system, objective, sense, result));
  return result;
}

bool is_feasible(const HRep& system) {
  Lifted L = lift(system);
  return phase_one(L);
}

bool verify_duals(const HRep& system, const RatVector& objective, Sense sense,
                  const LPResult& result) {
  if (result.status != LPStatus::Optimal) return false;
  const RatVector obj = sense == Sense::Maximize ? objective : negated(objective);
  RatVector combo = zero_vector(system.dim);
  Rational bound = 0;
  for (std::size_t i = 0; i < system.inequalities.size(); ++i) {
    const Rational& y = result.ineq_duals[i];
    if (sgn(y) < 0) return false;
    combo = add(combo, scaled(system.inequalities[i].coeffs, y));
    bound += y * system.inequalities[i].rhs;
  }
  for (std::size_t i = 0; i < system.equalities.size(); ++i) {
    const Rational& z = result.eq_duals[i];
    combo = add(combo, scaled(system.equalities[i].coeffs, z));
    bound += z * system.equalities[i].rhs;
  }
  const Rational value = sense == Sense::Maximize ? result.value : Rational(-result.value);
  return combo == obj && bound == value;
}

}  // namespace splitrank
