#pragma once

// JSON and text forms of polyhedra, direction lists and certificates.
// Every rational is written as a string "p" or "p/q".

#include <optional>
#include <string>

#include <json.hpp>

#include "splitrank/certifier.hpp"

namespace splitrank {

using Json = nlohmann::ordered_json;

struct PolyFile {
  std::optional<std::string> name;
  Polyhedron poly = Polyhedron::empty(0);
};

/// {dim, name?, ineq: [{a, b}], eq?: [{a, b}]}. Unknown keys are ignored,
/// so any polyhedron printed by polyhedron_to_json parses back.
/// Throws ParseError.
PolyFile parse_poly_file(const Json& doc);
PolyFile read_poly_file(const std::string& path);

/// Canonical H-representation in PolyFile shape plus the V-representation
/// under "vrep" and an "empty" flag.
Json polyhedron_to_json(const Polyhedron& p, const std::optional<std::string>& name = {});
std::string polyhedron_to_text(const Polyhedron& p, const std::optional<std::string>& name = {});

/// Either a bare array of vectors or {"directions": [...]}.
DirectionList parse_directions(const Json& doc, std::size_t dim);

Json certificate_to_json(const RankCertificate& cert, const std::string& instance);
std::string certificate_to_text(const RankCertificate& cert, const std::string& instance);

Json trace_to_json(const ClosureTrace& trace);

struct CheckResult {
  bool ok = true;
  std::string message;  // first failing claim
};

/// Re-verifies a certificate against Q from scratch: the facet rows describe
/// conv(Q ∩ Z^n), every direction recursion and big-M value, validity of each
/// facet at its t* (and not before), the recorded bound tables, and the final
/// equality of the combined T-th iterate with the hull.
CheckResult check_certificate(const Polyhedron& q, const Json& cert);

Json read_json_file(const std::string& path);

}  // namespace splitrank
