// splitrank: integer hulls, closures and split-rank certificates from the
// command line. Exit codes: 0 success, 1 error, 2 iteration cap reached.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "splitrank/serialization.hpp"

namespace {

using namespace splitrank;

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
  }

  void polyhedron(const Polyhedron& p, const std::optional<std::string>& name) const {
    emit(format == "text" ? polyhedron_to_text(p, name) : polyhedron_to_json(p, name).dump(2) + "\n");
  }
};

int run_hull(const std::string& input, const Output& out) {
  const PolyFile file = read_poly_file(input);
  out.polyhedron(integer_hull(file.poly), file.name);
  return 0;
}

// One round over all of `all`, leaving out directions whose range on the
// current iterate is unbounded.
Polyhedron bounded_round(const Polyhedron& current, const DirectionList& all, bool chvatal,
                         std::size_t round) {
  RatMatrix usable;
  for (const auto& d : all.directions()) {
    const bool ok = current.is_empty() ||
                    (maximize(current, d) && (chvatal || minimize(current, d)));
    if (ok) {
      usable.push_back(d);
    } else {
      std::cerr << "round " << round + 1 << ": skipped unbounded direction " << to_string(d)
                << "\n";
    }
  }
  const DirectionList list(all.dim(), std::move(usable));
  return chvatal ? chvatal_closure(current, list) : d_set_closure(current, list);
}

int run_closure(const std::string& input, const std::string& directions_path,
                std::optional<unsigned> norm_bound, const std::string& kind, std::size_t iters,
                const Output& out) {
  const PolyFile file = read_poly_file(input);
  const std::size_t n = file.poly.dim();
  const bool chvatal = kind == "chvatal";
  Polyhedron current = file.poly;
  if (norm_bound) {
    const DirectionList all = bounded_directions(n, *norm_bound);
    for (std::size_t t = 0; t < iters; ++t) current = bounded_round(current, all, chvatal, t);
  } else {
    const DirectionList list = parse_directions(read_json_file(directions_path), n);
    for (std::size_t t = 0; t < iters; ++t) {
      current = chvatal ? chvatal_closure(current, list) : d_set_closure(current, list);
    }
  }
  out.polyhedron(current, file.name);
  return 0;
}

int run_certify(const std::string& input, std::size_t cap, const Output& out) {
  const PolyFile file = read_poly_file(input);
  const std::string instance = file.name.value_or(input);
  CertifyOptions options;
  options.cap = cap;
  try {
    const RankCertificate cert = certify(file.poly, options);
    out.emit(out.format == "text" ? certificate_to_text(cert, instance)
                                  : certificate_to_json(cert, instance).dump(2) + "\n");
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n" << trace_to_json(e.trace).dump() << "\n";
    return 2;
  }
  return 0;
}

int run_check(const std::string& input, const std::string& certificate) {
  const PolyFile file = read_poly_file(input);
  const CheckResult r = check_certificate(file.poly, read_json_file(certificate));
  if (!r.ok) {
    std::cerr << r.message << "\n";
    return 1;
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer hulls, split closures and split-rank certificates"};
  app.set_version_flag("--version", std::string(SPLITRANK_VERSION));
  app.require_subcommand(1);

  Output out;
  std::string input;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input, "polyhedron file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", out.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out.path, "write the result to this file");
  };

  CLI::App* hull = app.add_subcommand("hull", "integer hull conv(Q ∩ Z^n)");
  add_common(hull);

  CLI::App* closure = app.add_subcommand("closure", "iterated split or Chvátal closure");
  add_common(closure);
  std::string directions_path;
  unsigned norm_bound = 0;
  std::string kind = "split";
  std::size_t iters = 1;
  auto* dir_opt = closure->add_option("--directions", directions_path, "direction list (JSON)")
                      ->check(CLI::ExistingFile);
  auto* norm_opt = closure->add_option("--norm-bound", norm_bound,
                                       "all primitive directions of ∞-norm at most L");
  dir_opt->excludes(norm_opt);
  closure->add_option("--kind", kind, "split or chvatal")->check(CLI::IsMember({"split", "chvatal"}));
  closure->add_option("--iters", iters, "number of rounds");

  CLI::App* cert = app.add_subcommand("certify", "split-rank certificate");
  add_common(cert);
  std::size_t cap = kDefaultIterationCap;
  cert->add_option("--max-iters", cap, "iteration cap per facet");

  CLI::App* check = app.add_subcommand("check", "re-verify a certificate");
  std::string certificate;
  check->add_option("input", input, "polyhedron file (JSON)")->required()->check(CLI::ExistingFile);
  check->add_option("certificate", certificate, "certificate file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (hull->parsed()) return run_hull(input, out);
    if (closure->parsed()) {
      if (dir_opt->count() == 0 && norm_opt->count() == 0) {
        std::cerr << "error: closure needs --directions or --norm-bound\n";
        return 1;
      }
      std::optional<unsigned> bound;
      if (norm_opt->count() > 0) bound = norm_bound;
      return run_closure(input, directions_path, bound, kind, iters, out);
    }
    if (cert->parsed()) return run_certify(input, cap, out);
    if (check->parsed()) return run_check(input, certificate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
