// Command-line front end: coeff, critical, asymp, compare.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "acsv/asymptotics.hpp"
#include "acsv/error.hpp"
#include "acsv/lattice.hpp"
#include "acsv/report.hpp"

using namespace acsv;

namespace {

enum Exit { kOk = 0, kParse = 2, kOutOfScope = 3, kNumerical = 4 };

struct Options {
  std::string gf_path;
  std::string dir;
  std::string index;
  std::string box;
  int terms = 1;
  unsigned precision = 128;
  int grid = 720;
  long upto = 0;
  bool with_quadrature = false;
  std::string format = "text";
  std::uint64_t seed = 0;
};

SearchOptions search_options(const Options& o) {
  if (o.precision < 64 || o.precision > 4096) throw Error(ErrorKind::domain, "cli", "--precision must lie in [64, 4096]");
  SearchOptions s;
  s.precision = o.precision;
  s.nd.precision = o.precision;
  s.minimality.grid = o.grid;
  s.minimality.seed = o.seed;
  s.nd.seed = o.seed;
  return s;
}

std::vector<long> parse_index(const std::string& text, size_t dim) {
  std::vector<long> r;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::parse, "cli", "bad index component '" + item + "'");
    if (v < 0) throw Error(ErrorKind::domain, "cli", "index components must be nonnegative");
    if (v > kMaxIndex) throw Error(ErrorKind::domain, "cli", "index component exceeds the cap " + std::to_string(kMaxIndex));
    r.push_back(v);
  }
  if (r.size() != dim) {
    throw Error(ErrorKind::domain, "cli", "index has " + std::to_string(r.size()) + " components, the GF has " +
                                              std::to_string(dim) + " variables");
  }
  return r;
}

std::optional<int> order_of_vanishing(const RationalGF& gf, const CriticalPoint& p) {
  if (gf.dim() != 2 || !p.pole_simple) return std::nullopt;
  if (p.minimality != Minimality::strict && p.minimality != Minimality::finitely_minimal) return std::nullopt;
  try {
    return local_data_2d(gf, p.coords, p.direction, p.axis, 8).phase.k;
  } catch (const Error&) {
    return std::nullopt;
  }
}

int run(const std::string& cmd, const Options& o) {
  bool structured = o.format == "structured";
  RationalGF gf = gf_read_file(o.gf_path);
  if (cmd == "coeff" && o.box.empty() && o.index.empty()) {
    throw Error(ErrorKind::domain, "cli", "coeff needs --index or --box");
  }
  if (cmd == "coeff" && !o.box.empty()) {
    std::vector<long> b = parse_index(o.box, gf.dim());
    CoefficientLattice lat = extract_coefficients(gf, b);
    if (structured) {
      nlohmann::json rows = nlohmann::json::array();
      std::istringstream in(lat.export_text());
      std::string line;
      while (std::getline(in, line)) {
        size_t colon = line.find(": ");
        rows.push_back({{"index", line.substr(0, colon)}, {"value", line.substr(colon + 2)}});
      }
      std::cout << nlohmann::json{{"command", "coeff"}, {"box", b}, {"values", rows}}.dump(2) << "\n";
    } else {
      std::cout << lat.export_text();
    }
    return kOk;
  }
  if (cmd == "coeff") {
    std::vector<long> r = parse_index(o.index, gf.dim());
    GaussRat a = single_coefficient(gf, r);
    if (structured) {
      std::cout << nlohmann::json{{"command", "coeff"}, {"index", r}, {"value", a.to_string()}}.dump(2) << "\n";
    } else {
      std::cout << a.to_string() << "\n";
    }
    return kOk;
  }
  SearchOptions so = search_options(o);
  Direction dir = Direction::parse(o.dir);
  if (cmd == "critical") {
    auto pts = find_critical_points(gf, dir, so);
    std::vector<std::optional<int>> ks;
    for (const auto& p : pts) ks.push_back(order_of_vanishing(gf, p));
    std::cout << (structured ? critical_json(pts, ks) + "\n" : critical_text(pts, ks));
    return kOk;
  }
  if (cmd == "asymp") {
    auto e = asymptotics_for(gf, dir, o.terms, so);
    std::cout << (structured ? asymp_json(e, gf.vars()) + "\n" : asymp_text(e, gf.vars()));
    return kOk;
  }
  auto rep = build_compare(gf, dir, o.terms, o.upto, o.with_quadrature, so);
  std::cout << (structured ? compare_json(rep) + "\n" : compare_text(rep));
  return kOk;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
    case ErrorKind::domain:
      return kParse;
    case ErrorKind::out_of_scope:
      return kOutOfScope;
    case ErrorKind::numerical:
      return kNumerical;
  }
  return kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotics of rational generating-function coefficients at smooth minimal points"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_dir) {
    sub->add_option("--gf", o.gf_path, "GF file (JSON document)")->required();
    if (needs_dir) {
      sub->add_option("--dir", o.dir, "direction, e.g. 1,1 or 4,3")->required();
      sub->add_option("--precision", o.precision, "working precision in bits")->capture_default_str();
      sub->add_option("--grid", o.grid, "angular samples for the minimality scan")->capture_default_str();
      sub->add_option("--seed", o.seed, "seed for sampled searches")->capture_default_str();
    }
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };
  auto* coeff = app.add_subcommand("coeff", "exact coefficient a_r");
  add_common(coeff, false);
  auto* index_opt = coeff->add_option("--index", o.index, "multi-index, e.g. 5,5");
  auto* box_opt = coeff->add_option("--box", o.box, "export every a_r with 0 <= r <= box, one 'r: value' line each");
  index_opt->excludes(box_opt);
  auto* critical = app.add_subcommand("critical", "critical points for a direction");
  add_common(critical, true);
  auto* asymp = app.add_subcommand("asymp", "asymptotic expansion for a direction");
  add_common(asymp, true);
  asymp->add_option("--terms", o.terms, "number of expansion orders")->capture_default_str();
  auto* compare = app.add_subcommand("compare", "exact coefficients against the expansion along a ray");
  add_common(compare, true);
  compare->add_option("--terms", o.terms, "number of expansion orders")->capture_default_str();
  compare->add_option("--upto", o.upto, "largest multiplier of the direction")->capture_default_str();
  compare->add_flag("--with-quadrature", o.with_quadrature, "also evaluate the reduced Cauchy integral");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const Error& e) {
    if (o.format == "structured") {
      nlohmann::json j{{"error", {{"kind", to_string(e.kind())}, {"module", e.module()}, {"message", e.message()}}}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error (" << to_string(e.kind()) << ") in " << e.module() << ": " << e.message() << "\n";
    }
    return exit_code(e.kind());
  }
}
