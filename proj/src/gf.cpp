#include "acsv/gf.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "acsv/error.hpp"

namespace acsv {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::parse, "gf", msg); }

MultiPoly side_from_json(const json& j, const std::vector<std::string>& vars, const char* name) {
  if (j.is_string()) return poly_parse(j.get<std::string>(), vars);
  if (!j.is_array()) parse_error(std::string("'") + name + "' must be a list of terms or an expression string");
  std::vector<std::pair<Exponents, GaussRat>> terms;
  for (const auto& rec : j) {
    if (!rec.is_object() || !rec.contains("coeff") || !rec.contains("exps")) {
      parse_error(std::string("each term of '") + name + "' needs 'coeff' and 'exps'");
    }
    auto text = [&](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return v.dump();
      parse_error(std::string("coefficient in '") + name + "' must be a \"p/q\" string or an integer");
    };
    mpq_class re = GaussRat::parse_rational(text(rec["coeff"]));
    mpq_class im = rec.contains("coeff_im") ? GaussRat::parse_rational(text(rec["coeff_im"])) : mpq_class(0);
    const json& ex = rec["exps"];
    if (!ex.is_array()) parse_error("'exps' must be a list");
    Exponents e;
    for (const auto& x : ex) {
      if (!x.is_number_integer()) parse_error("exponents must be integers");
      long v = x.get<long>();
      if (v < 0) {
        parse_error(
            "negative exponent: Laurent inputs are not supported; multiply numerator and denominator by the "
            "monomial that clears every negative power and shift the coefficient index accordingly");
      }
      e.push_back(static_cast<unsigned>(v));
    }
    terms.emplace_back(std::move(e), GaussRat(re, im));
  }
  return MultiPoly::from_terms(vars, terms);
}

json side_to_json(const MultiPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) {
    json rec;
    rec["coeff"] = c.real().get_str();
    if (!c.is_real()) rec["coeff_im"] = c.imag().get_str();
    rec["exps"] = e;
    out.push_back(rec);
  }
  return out;
}

}  // namespace

RationalGF gf_new(MultiPoly g, MultiPoly h) {
  if (g.vars() != h.vars()) throw Error(ErrorKind::domain, "gf", "numerator and denominator use different variables");
  if (h.dim() == 0) throw Error(ErrorKind::domain, "gf", "at least one variable is required");
  if (h.constant_term().is_zero()) {
    throw Error(ErrorKind::domain, "gf",
                "H(0) = 0: F is singular at the origin, so its power series there is undefined");
  }
  return RationalGF(std::move(g), std::move(h));
}

RationalGF RationalGF::permuted(std::span<const size_t> perm) const {
  return RationalGF(g_.permuted(perm), h_.permuted(perm));
}

RationalGF gf_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) parse_error("document must be an object");
  for (const char* key : {"vars", "numerator", "denominator"})
    if (!j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  std::vector<std::string> vars;
  if (!j["vars"].is_array()) parse_error("'vars' must be a list of names");
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) parse_error("'vars' must be a list of names");
    vars.push_back(v.get<std::string>());
  }
  if (vars.empty()) parse_error("'vars' is empty");
  MultiPoly g = side_from_json(j["numerator"], vars, "numerator");
  MultiPoly h = side_from_json(j["denominator"], vars, "denominator");
  return gf_new(std::move(g), std::move(h));
}

RationalGF gf_read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return gf_from_json_text(ss.str());
}

std::string gf_to_json_text(const RationalGF& gf) {
  json j;
  j["vars"] = gf.vars();
  j["numerator"] = side_to_json(gf.numerator());
  j["denominator"] = side_to_json(gf.denominator());
  return j.dump(2);
}

}  // namespace acsv
