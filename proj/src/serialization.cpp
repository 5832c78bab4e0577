#include "splitrank/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "splitrank/errors.hpp"

namespace splitrank {

namespace {

Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ParseError(where + ": expected a rational string");
}

RatVector vector_from(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  RatVector out;
  for (const auto& e : j) out.push_back(rational_from(e, where));
  return out;
}

RatMatrix matrix_from(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of vectors");
  RatMatrix out;
  for (const auto& row : j) out.push_back(vector_from(row, where));
  return out;
}

Integer integer_from(const Json& j, const std::string& where) {
  const Rational r = rational_from(j, where);
  if (!is_integral(r)) throw ParseError(where + ": expected an integer");
  return r.get_num();
}

std::size_t count_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(where + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

Json rows_to_json(const std::vector<LinIneq>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"a", to_json(r.coeffs)}, {"b", to_json(r.rhs)}});
  return out;
}

std::vector<LinIneq> rows_from(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  std::vector<LinIneq> out;
  for (const auto& row : j) {
    if (!row.is_object() || !row.contains("a") || !row.contains("b")) {
      throw ParseError(where + ": each row needs 'a' and 'b'");
    }
    LinIneq r{vector_from(row["a"], where + ".a"), rational_from(row["b"], where + ".b")};
    if (r.coeffs.size() != dim) throw ParseError(where + ": row length differs from dim");
    out.push_back(std::move(r));
  }
  return out;
}

std::string linear_form(const RatVector& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    const Rational mag = abs(a[i]);
    if (out.empty()) {
      if (sgn(a[i]) < 0) out += "-";
    } else {
      out += sgn(a[i]) < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += "x" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string row_text(const LinIneq& r, const char* op) {
  return linear_form(r.coeffs) + " " + op + " " + to_string(r.rhs);
}

Json facet_to_json(const FacetCertificate& fc) {
  Json f;
  f["c"] = to_json(fc.facet.normal);
  f["alpha"] = fc.facet.rhs.get_str();
  f["status"] = fc.status == FacetStatus::AlreadyValid ? "already_valid" : "valid";
  f["t_star"] = fc.iterations;
  if (fc.directions) {
    const DirectionSet& ds = *fc.directions;
    Json w = Json::array();
    for (const auto& row : ds.basis.rows()) w.push_back(to_json(row));
    f["W"] = w;
    f["k"] = ds.k;
    f["M"] = to_json(ds.big_m);
    f["d"] = to_json(ds.directions);
  } else {
    f["W"] = Json::array();
    f["k"] = 0;
    f["M"] = Json::array();
    f["d"] = Json::array();
  }
  f["trace"] = trace_to_json(fc.trace);
  f["unit_drop"] = fc.unit_drop;
  f["nested_levels"] = fc.nested_levels ? Json(*fc.nested_levels) : Json(nullptr);
  f["integral_point"] = fc.integral_point ? to_json(*fc.integral_point) : Json(nullptr);
  return f;
}

// Bounds max d·x over each iterate 0..steps of the D-closure; stops at the
// first empty iterate.
std::vector<RatVector> recompute_bounds(const Polyhedron& q, const RatMatrix& d,
                                        const DirectionList& list, std::size_t steps) {
  std::vector<RatVector> out;
  Polyhedron s = q;
  for (std::size_t t = 0; t <= steps && !s.is_empty(); ++t) {
    RatVector row;
    for (const auto& dir : d) {
      const LPResult r = solve_lp(s, dir, Sense::Maximize);
      if (r.status != LPStatus::Optimal) throw UnboundedDirectionRange(dir, RangeSide::Above);
      row.push_back(r.value);
    }
    out.push_back(std::move(row));
    if (t < steps) s = d_set_closure(s, list);
  }
  return out;
}

// c·x <= alpha on the iterate (vacuous on the empty set), by simplex.
bool holds_on(const Polyhedron& s, const RatVector& c, const Rational& alpha) {
  const LPResult r = solve_lp(s, c, Sense::Maximize);
  if (r.status == LPStatus::Infeasible) return true;
  return r.status == LPStatus::Optimal && r.value <= alpha;
}

}  // namespace

PolyFile parse_poly_file(const Json& doc) {
  if (!doc.is_object()) throw ParseError("polyhedron file: expected a JSON object");
  if (!doc.contains("dim")) throw ParseError("polyhedron file: missing 'dim'");
  const std::size_t dim = count_from(doc["dim"], "dim");
  PolyFile out;
  if (doc.contains("name") && !doc["name"].is_null()) {
    if (!doc["name"].is_string()) throw ParseError("name: expected a string");
    out.name = doc["name"].get<std::string>();
  }
  const auto ineq = doc.contains("ineq") ? rows_from(doc["ineq"], dim, "ineq")
                                         : std::vector<LinIneq>{};
  const auto eq = doc.contains("eq") && !doc["eq"].is_null() ? rows_from(doc["eq"], dim, "eq")
                                                             : std::vector<LinIneq>{};
  out.poly = canonicalize(ineq, dim, eq);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PolyFile read_poly_file(const std::string& path) { return parse_poly_file(read_json_file(path)); }

Json polyhedron_to_json(const Polyhedron& p, const std::optional<std::string>& name) {
  Json out;
  out["dim"] = p.dim();
  if (name) out["name"] = *name;
  out["empty"] = p.is_empty();
  out["ineq"] = rows_to_json(p.hrep().inequalities);
  out["eq"] = rows_to_json(p.hrep().equalities);
  out["vrep"] = {{"vertices", to_json(p.vrep().vertices)},
                 {"rays", to_json(p.vrep().rays)},
                 {"lineality", to_json(p.vrep().lineality)}};
  return out;
}

std::string polyhedron_to_text(const Polyhedron& p, const std::optional<std::string>& name) {
  std::ostringstream out;
  if (name) out << "name: " << *name << "\n";
  out << "dim: " << p.dim() << "\n";
  if (p.is_empty()) {
    out << "empty\n  " << row_text(p.hrep().inequalities.front(), "<=") << "\n";
    return out.str();
  }
  out << "inequalities:\n";
  for (const auto& r : p.hrep().inequalities) out << "  " << row_text(r, "<=") << "\n";
  if (!p.hrep().equalities.empty()) {
    out << "equalities:\n";
    for (const auto& r : p.hrep().equalities) out << "  " << row_text(r, "=") << "\n";
  }
  const auto list = [&](const char* label, const RatMatrix& m) {
    if (m.empty()) return;
    out << label << ":\n";
    for (const auto& v : m) out << "  " << to_string(v) << "\n";
  };
  list("vertices", p.vrep().vertices);
  list("rays", p.vrep().rays);
  list("lineality", p.vrep().lineality);
  return out.str();
}

DirectionList parse_directions(const Json& doc, std::size_t dim) {
  const Json& rows = doc.is_object() && doc.contains("directions") ? doc["directions"] : doc;
  RatMatrix m = matrix_from(rows, "directions");
  for (const auto& d : m) {
    if (d.size() != dim) throw ParseError("directions: vector length differs from dim");
  }
  return DirectionList(dim, std::move(m));
}

Json trace_to_json(const ClosureTrace& trace) {
  Json out;
  out["directions"] = to_json(trace.directions);
  out["bounds"] = to_json(RatMatrix(trace.bounds.begin(), trace.bounds.end()));
  out["empty_at"] = trace.empty_at ? Json(*trace.empty_at) : Json(nullptr);
  out["fixpoint"] = trace.fixpoint;
  Json gamma = Json::array();
  for (const auto& g : trace.gamma) gamma.push_back(g ? Json(g->get_str()) : Json(nullptr));
  out["gamma"] = gamma;
  out["settle_all"] = trace.settle_all ? Json(*trace.settle_all) : Json(nullptr);
  return out;
}

Json certificate_to_json(const RankCertificate& cert, const std::string& instance) {
  Json out;
  out["instance"] = instance;
  Json facets = Json::array();
  for (const auto& fc : cert.per_facet) facets.push_back(facet_to_json(fc));
  out["facets"] = facets;
  out["T"] = cert.rounds;
  out["combined_directions"] = to_json(cert.combined.directions());
  out["verified"] = cert.verified;
  out["tool_version"] = SPLITRANK_VERSION;
  return out;
}

std::string certificate_to_text(const RankCertificate& cert, const std::string& instance) {
  std::ostringstream out;
  out << "instance: " << instance << "\n";
  for (std::size_t i = 0; i < cert.per_facet.size(); ++i) {
    const FacetCertificate& fc = cert.per_facet[i];
    out << "facet " << i + 1 << ": "
        << row_text({fc.facet.normal, Rational(fc.facet.rhs)}, "<=");
    if (fc.status == FacetStatus::AlreadyValid) {
      out << "  (valid on Q)\n";
      continue;
    }
    out << "  t* = " << fc.iterations << "\n";
    out << "  d:";
    for (const auto& d : fc.directions->directions) out << " " << to_string(d);
    out << "\n  M:";
    for (const auto& m : fc.directions->big_m) out << " " << m.get_str();
    out << "\n";
  }
  out << "T = " << cert.rounds << ", " << cert.combined.size() << " directions, "
      << (cert.verified ? "verified" : "NOT verified") << "\n";
  return out.str();
}

CheckResult check_certificate(const Polyhedron& q, const Json& cert) {
  const std::size_t n = q.dim();
  const auto fail = [](std::string msg) { return CheckResult{false, std::move(msg)}; };
  try {
    if (!cert.is_object() || !cert.contains("facets")) return fail("certificate: missing 'facets'");
    const Polyhedron hull = integer_hull(q);

    std::vector<LinIneq> facet_rows;
    RatMatrix all_d;
    std::size_t max_t = 0;
    std::size_t index = 0;
    for (const auto& f : cert["facets"]) {
      const std::string tag = "facet " + std::to_string(++index);
      const RatVector c = vector_from(f.at("c"), tag + ".c");
      const Rational alpha(integer_from(f.at("alpha"), tag + ".alpha"));
      if (c.size() != n) return fail(tag + ": c has the wrong length");
      facet_rows.push_back({c, alpha});
      const std::size_t t_star = count_from(f.at("t_star"), tag + ".t_star");
      max_t = std::max(max_t, t_star);
      const RatMatrix d = matrix_from(f.at("d"), tag + ".d");

      if (d.empty()) {
        if (t_star != 0) return fail(tag + ": no directions but t* > 0");
        if (!holds_on(q, c, alpha)) return fail(tag + ": cx ≤ α not valid at t=0");
        continue;
      }
      const RatMatrix w = matrix_from(f.at("W"), tag + ".W");
      const RatVector big = vector_from(f.at("M"), tag + ".M");
      if (w.size() != n || big.size() + 1 != d.size() || big.size() > n) {
        return fail(tag + ": W, M and d have inconsistent sizes");
      }
      const LatticeBasis basis(to_integer(w));  // throws unless unimodular
      if (d.front() != c) return fail(tag + ": d_0 differs from c");
      for (std::size_t i = 1; i < d.size(); ++i) {
        const RatVector expected = add(scaled(d[i - 1], 2 * big[i - 1] + 1), w[i - 1]);
        if (d[i] != expected) {
          return fail(tag + ": recursion identity fails at i=" + std::to_string(i));
        }
        const auto recomputed = big_m(q, {c, alpha.get_num()}, w[i - 1]);
        if (!recomputed || Rational(*recomputed) != big[i - 1]) {
          return fail(tag + ": M_" + std::to_string(i) + " does not match its LPs");
        }
      }
      all_d.insert(all_d.end(), d.begin(), d.end());

      const DirectionList list(n, d);
      const Polyhedron at_t = iterate_closure(q, list, t_star);
      if (!holds_on(at_t, c, alpha)) {
        return fail(tag + ": cx ≤ α not valid at t=" + std::to_string(t_star));
      }
      if (t_star >= 1 && holds_on(iterate_closure(q, list, t_star - 1), c, alpha)) {
        return fail(tag + ": cx ≤ α already valid at t=" + std::to_string(t_star - 1));
      }

      if (f.contains("trace")) {
        const Json& tr = f["trace"];
        const RatMatrix recorded = matrix_from(tr.at("bounds"), tag + ".trace");
        if (!recorded.empty()) {
          const auto fresh = recompute_bounds(q, d, list, recorded.size() - 1);
          if (fresh != recorded) return fail(tag + ": recorded bounds differ from the iterates");
          ClosureTrace check;
          check.directions = d;
          check.bounds = fresh;
          if (!verify_unit_drop(check)) return fail(tag + ": bounds violate the unit drop");
        }
      }
    }

    if (canonicalize(facet_rows, n) != hull) {
      return fail("facets: rows do not describe the integer hull");
    }
    const DirectionList combined(n, all_d);
    const RatMatrix listed = matrix_from(cert.at("combined_directions"), "combined_directions");
    if (DirectionList(n, listed) != combined) {
      return fail("combined_directions: not the union of the facet directions");
    }
    if (count_from(cert.at("T"), "T") != max_t) return fail("T: not the largest t*");
    if (iterate_closure(q, combined, max_t) != hull) {
      return fail("combined: iterate " + std::to_string(max_t) + " differs from the integer hull");
    }
    if (!cert.value("verified", false)) return fail("verified: flag is false");
  } catch (const Json::exception& e) {
    return fail(std::string("certificate: ") + e.what());
  } catch (const Error& e) {
    return fail(std::string("certificate: ") + e.what());
  }
  return {};
}

}  // namespace splitrank
