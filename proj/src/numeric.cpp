#include "splitrank/numeric.hpp"

#include <algorithm>
#include <cctype>

#include "splitrank/errors.hpp"

namespace splitrank {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

UnboundedDirectionRange::UnboundedDirectionRange(std::vector<mpq_class> d, RangeSide s)
    : Error("direction " + to_string(d) + " has unbounded range " +
            (s == RangeSide::Below ? "below" : "above")),
      direction(std::move(d)),
      side(s) {}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                              : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  Integer q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational value(Integer(std::string(num), 10), q);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const RatVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

bool is_integral(const Rational& value) { return value.get_den() == 1; }

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integral(x); });
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RatVector add(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector scaled(const RatVector& v, const Rational& factor) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

RatVector negated(const RatVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector e(n, Rational(0));
  e[i] = 1;
  return e;
}

RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(to_rational(row));
  return out;
}

IntVector to_integer(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integral(x)) throw NotIntegral("vector " + to_string(v) + " is not integral");
    out.push_back(x.get_num());
  }
  return out;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(to_integer(row));
  return out;
}

RatVector clear_denominators(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return scaled(v, Rational(l));
}

RatVector primitive_vector(const RatVector& v) {
  if (is_zero(v)) throw ZeroVector("primitive_vector of the zero vector");
  RatVector out = clear_denominators(v);
  Integer g = 0;
  for (const auto& x : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  if (g != 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

bool canonical_less(const RatVector& a, const RatVector& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

RowEchelon rref(RatMatrix rows, std::size_t pivot_columns) {
  RowEchelon out;
  if (rows.empty()) return out;
  const std::size_t ncols = rows.front().size();
  const std::size_t limit = pivot_columns == 0 ? ncols : pivot_columns;
  std::size_t r = 0;
  for (std::size_t col = 0; col < limit && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][col]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][col]) == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    out.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const RatMatrix& rows) { return rref(rows).pivots.size(); }

RatMatrix null_space(const RatMatrix& rows, std::size_t ncols) {
  const RowEchelon e = rref(rows);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v = zero_vector(ncols);
    v[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& rows, const RatVector& rhs, std::size_t ncols) {
  RatMatrix aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RatVector r = rows[i];
    r.push_back(rhs[i]);
    aug.push_back(std::move(r));
  }
  RatVector x = zero_vector(ncols);
  if (aug.empty()) return x;
  const RowEchelon e = rref(std::move(aug));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == ncols) return std::nullopt;  // 0 = nonzero
    x[e.pivots[i]] = e.rows[i][ncols];
  }
  return x;
}

RatMatrix transpose(const RatMatrix& m, std::size_t ncols) {
  RatMatrix out(ncols, RatVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) out[j][i] = m[i][j];
  return out;
}

}  // namespace splitrank
