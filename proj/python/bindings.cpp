// Polyhedra and certificates cross the boundary as JSON text; the Python
// package turns them into Fractions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitrank/errors.hpp"
#include "splitrank/serialization.hpp"

namespace py = pybind11;
using namespace splitrank;

namespace {

Polyhedron load(const std::string& text) { return parse_poly_file(Json::parse(text)).poly; }

std::string dump(const Polyhedron& p) { return polyhedron_to_json(p).dump(); }

std::string hull(const std::string& poly) { return dump(integer_hull(load(poly))); }

// Rounds over explicit directions, or over every primitive direction of
// infinity-norm at most norm_bound (skipping those with an unbounded range).
std::string closure(const std::string& poly, const std::optional<std::string>& directions,
                    std::optional<unsigned> norm_bound, const std::string& kind, std::size_t iters) {
  if (kind != "split" && kind != "chvatal") throw py::value_error("kind must be split or chvatal");
  if (directions.has_value() == norm_bound.has_value()) {
    throw py::value_error("give exactly one of directions and norm_bound");
  }
  const bool chvatal = kind == "chvatal";
  Polyhedron current = load(poly);
  const std::size_t n = current.dim();
  const DirectionList all =
      norm_bound ? bounded_directions(n, *norm_bound) : parse_directions(Json::parse(*directions), n);
  for (std::size_t t = 0; t < iters; ++t) {
    DirectionList list = all;
    if (norm_bound) {
      RatMatrix usable;
      for (const auto& d : all.directions()) {
        if (maximize(current, d) && (chvatal || minimize(current, d))) usable.push_back(d);
      }
      list = DirectionList(n, std::move(usable));
    }
    current = chvatal ? chvatal_closure(current, list) : d_set_closure(current, list);
  }
  return dump(current);
}

std::string certify_json(const std::string& poly, std::size_t max_iters, const std::string& name) {
  CertifyOptions options;
  options.cap = max_iters;
  return certificate_to_json(certify(load(poly), options), name).dump();
}

std::pair<bool, std::string> check(const std::string& poly, const std::string& cert) {
  const CheckResult r = check_certificate(load(poly), Json::parse(cert));
  return {r.ok, r.message};
}

std::pair<bool, std::size_t> split_rank_bounded(const std::string& poly, unsigned bound,
                                                std::size_t cap) {
  const BoundedRankResult r = bounded_split_rank(load(poly), bound, cap);
  return {r.reached, r.iterations};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = SPLITRANK_VERSION;

  static py::exception<Error> error(m, "SplitrankError");
  static py::exception<CapExceeded> cap(m, "CapExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapExceeded& e) {
      py::set_error(cap, (std::string(e.what()) + "\n" + trace_to_json(e.trace).dump()).c_str());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const Json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("hull", &hull, py::arg("poly"));
  m.def("closure", &closure, py::arg("poly"), py::arg("directions") = py::none(),
        py::arg("norm_bound") = py::none(), py::arg("kind") = "split", py::arg("iters") = 1);
  m.def("certify", &certify_json, py::arg("poly"), py::arg("max_iters") = kDefaultIterationCap,
        py::arg("name") = "instance");
  m.def("check", &check, py::arg("poly"), py::arg("certificate"));
  m.def("bounded_split_rank", &split_rank_bounded, py::arg("poly"), py::arg("bound"),
        py::arg("cap") = kDefaultIterationCap);
}
