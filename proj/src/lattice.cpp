#include "splitrank/lattice.hpp"

#include <algorithm>

#include "splitrank/errors.hpp"

namespace splitrank {

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix transpose_int(const IntMatrix& m, std::size_t ncols) {
  IntMatrix out(ncols, IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) out[j][i] = m[i][j];
  return out;
}

// row[target] -= q * row[source], applied to both H and U.
void subtract_row(IntMatrix& H, IntMatrix& U, std::size_t target, std::size_t source,
                  const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < H[target].size(); ++j) H[target][j] -= q * H[source][j];
  for (std::size_t j = 0; j < U[target].size(); ++j) U[target][j] -= q * U[source][j];
}

}  // namespace

HermiteReduction hermite_reduce(const IntMatrix& W) {
  HermiteReduction out;
  out.H = W;
  out.U = identity(W.size());
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  const std::size_t k = H.size();
  const std::size_t n = k == 0 ? 0 : H.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < k; ++col) {
    while (true) {
      std::size_t best = k;
      for (std::size_t i = r; i < k; ++i) {
        if (H[i][col] == 0) continue;
        if (best == k || abs(H[i][col]) < abs(H[best][col])) best = i;
      }
      if (best == k) break;
      std::swap(H[r], H[best]);
      std::swap(U[r], U[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < k; ++i) {
        if (H[i][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), H[i][col].get_mpz_t(), H[r][col].get_mpz_t());
        subtract_row(H, U, i, r, q);
        if (H[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (H[r][col] == 0) continue;
    if (H[r][col] < 0) {
      for (auto& x : H[r]) x = -x;
      for (auto& x : U[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H[i][col].get_mpz_t(), H[r][col].get_mpz_t());
      subtract_row(H, U, i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

HermiteForm hnf(const IntMatrix& W) {
  HermiteReduction red = hermite_reduce(W);
  if (red.rank < W.size()) throw RankDeficient("hnf: rows are linearly dependent");
  return {std::move(red.H), std::move(red.U)};
}

Integer determinant(const IntMatrix& square) {
  const std::size_t n = square.size();
  if (n == 0) return 1;
  IntMatrix a = square;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix unimodular_inverse(const IntMatrix& square) {
  const std::size_t n = square.size();
  RatMatrix aug(n, RatVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = square[i][j];
    aug[i][n + i] = 1;
  }
  const RowEchelon e = rref(std::move(aug), n);
  if (e.pivots.size() != n) throw Error("unimodular_inverse: singular matrix");
  IntMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row(e.rows[i].begin() + static_cast<std::ptrdiff_t>(n), e.rows[i].end());
    if (!is_integral(row)) throw Error("unimodular_inverse: matrix is not unimodular");
    inv[i] = to_integer(row);
  }
  return inv;
}

IntMatrix integer_kernel(const IntMatrix& A, std::size_t ncols) {
  const HermiteReduction red = hermite_reduce(transpose_int(A, ncols));
  return IntMatrix(red.U.begin() + static_cast<std::ptrdiff_t>(red.rank), red.U.end());
}

LatticeBasis::LatticeBasis(IntMatrix rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw DimensionMismatch("lattice basis must be square");
  }
  const Integer det = determinant(rows_);
  if (abs(det) != 1) throw Error("lattice basis has determinant " + det.get_str());
}

LatticeBasis extend_to_lattice_basis(const IntMatrix& w, std::size_t n) {
  const std::size_t k = w.size();
  for (const auto& row : w) {
    if (row.size() != n) throw DimensionMismatch("extend_to_lattice_basis: row length");
  }
  if (k == 0) return LatticeBasis(identity(n));
  const HermiteReduction red = hermite_reduce(transpose_int(w, n));
  if (red.rank < k) throw RankDeficient("extend_to_lattice_basis: rows are dependent");
  // U·Wᵀ = [T; 0], so W = Tᵀ·(first k rows of V) with V = (U⁻¹)ᵀ.
  Integer det_t = 1;
  for (std::size_t i = 0; i < k; ++i) det_t *= red.H[i][i];
  const IntMatrix V = transpose_int(unimodular_inverse(red.U), n);
  if (abs(det_t) != 1) {
    const RatMatrix wt = transpose(to_rational(w), n);
    for (std::size_t i = 0; i < k; ++i) {
      const RatVector v = to_rational(V[i]);
      const auto coeffs = solve(wt, v, k);
      if (coeffs && !is_integral(*coeffs)) {
        throw NotPrimitive("rows do not generate Z^n ∩ span; witness " + to_string(v), v);
      }
    }
    throw NotPrimitive("rows do not generate Z^n ∩ span", {});
  }
  IntMatrix rows = w;
  for (std::size_t i = k; i < n; ++i) rows.push_back(V[i]);
  return LatticeBasis(std::move(rows));
}

RatMatrix parallelepiped_lattice_points(const IntMatrix& h, std::size_t n, std::size_t limit) {
  const std::size_t k = h.size();
  RatMatrix found;
  if (k == 0) return found;
  // B: basis of Z^n ∩ span(h); h = T·B with T integral.
  const IntMatrix B = integer_kernel(integer_kernel(h, n), n);
  const RatMatrix bt = transpose(to_rational(B), n);
  IntMatrix T;
  for (const auto& row : h) {
    const auto coeffs = solve(bt, to_rational(row), k);
    T.push_back(to_integer(*coeffs));
  }
  const HermiteForm ht = hnf(T);
  std::vector<Integer> bound(k);
  for (std::size_t i = 0; i < k; ++i) bound[i] = ht.H[i][i];

  // λ(a) = a·T⁻¹ gives the coordinates of a·B in the basis h.
  const RatMatrix h_rows = to_rational(h);
  const RatMatrix tt = transpose(to_rational(T), k);
  std::vector<Integer> a(k, Integer(0));
  while (true) {
    std::size_t i = 0;
    while (i < k) {
      a[i] += 1;
      if (a[i] < bound[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == k) break;  // wrapped around to zero
    // solve λ·T = a, i.e. Tᵀ λᵀ = aᵀ
    const auto lambda = solve(tt, to_rational(IntVector(a)), k);
    RatVector p = zero_vector(n);
    for (std::size_t j = 0; j < k; ++j) {
      const Rational frac = (*lambda)[j] - Rational(floor((*lambda)[j]));
      if (sgn(frac) != 0) p = add(p, scaled(h_rows[j], frac));
    }
    found.push_back(std::move(p));
    if (limit != 0 && found.size() >= limit) break;
  }
  return found;
}

IntMatrix basis_in_cone(const RatMatrix& generators, std::size_t n) {
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionMismatch("basis_in_cone: generator length");
  }
  if (rank(generators) != generators.size()) {
    throw RankDeficient("basis_in_cone: generators are linearly dependent");
  }
  const std::size_t k = generators.size();
  IntMatrix h;
  for (const auto& g : generators) h.push_back(to_integer(primitive_vector(g)));
  while (true) {
    const RatMatrix pts = parallelepiped_lattice_points(h, n, 1);
    if (pts.empty()) break;
    const RatVector& p = pts.front();
    const auto lambda = solve(transpose(to_rational(h), n), p, k);
    std::size_t j = 0;
    for (std::size_t i = 1; i < k; ++i) {
      if ((*lambda)[i] > (*lambda)[j]) j = i;
    }
    h[j] = to_integer(p);
  }
  std::sort(h.begin(), h.end(), [](const IntVector& x, const IntVector& y) {
    return canonical_less(to_rational(x), to_rational(y));
  });
  return h;
}

}  // namespace splitrank
