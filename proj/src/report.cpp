#include "acsv/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "acsv/error.hpp"
#include "acsv/lattice.hpp"
#include "acsv/oscint.hpp"

namespace acsv {

namespace {

using nlohmann::json;

const char* kModule = "cli";

std::string short_decimal(const ap::Real& x, int digits = 6) { return x.to_string(digits); }

json complex_json(const ap::Complex& z) { return {{"re", z.real().to_string(0)}, {"im", z.imag().to_string(0)}}; }

json point_json(const Point& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(complex_json(c));
  return a;
}

std::string point_text(const Point& p, int digits) {
  std::string s = "(";
  for (size_t j = 0; j < p.size(); ++j) s += (j ? ", " : "") + decimal(p[j], digits);
  return s + ")";
}

std::string join_index(const std::vector<long>& r) {
  std::string s;
  for (size_t j = 0; j < r.size(); ++j) s += (j ? "," : "") + std::to_string(r[j]);
  return s;
}

}  // namespace

std::string decimal(const ap::Complex& z, int digits) {
  std::string re = z.real().to_string(digits);
  if (z.imag().is_zero()) return re;
  std::string im = ap::abs(z.imag()).to_string(digits);
  return re + (z.imag().sign() < 0 ? "-" : "+") + im + "*I";
}

std::vector<long> compare_ladder(long upto) {
  if (upto < 0) throw Error(ErrorKind::domain, kModule, "--upto must be nonnegative");
  std::vector<long> out;
  for (long m = upto; m > 0; m /= 2) {
    out.push_back(m);
    if (m % 2 == 1) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

CompareReport build_compare(const RationalGF& gf, const Direction& dir, int terms, long upto, bool with_quadrature,
                            const SearchOptions& opts) {
  std::vector<long> ladder = compare_ladder(upto);
  for (size_t j = 0; j < dir.dim(); ++j) {
    if (dir.component(j) < 0) throw Error(ErrorKind::domain, kModule, "compare needs a nonnegative direction");
    if (upto > 0 && dir.component(j) > kMaxIndex / upto) {
      throw Error(ErrorKind::domain, kModule, "upto * dir exceeds the index cap " + std::to_string(kMaxIndex));
    }
  }
  CompareReport rep;
  rep.direction = dir.to_string();
  rep.terms = terms;
  CombinedExpansion e = asymptotics_for(gf, dir, terms, opts);
  for (const auto& c : e.parts[0].point) rep.point.push_back(decimal(c, 20));
  CriticalPoint cp = contributing_point(gf, dir, opts);
  rep.minimality = to_string(cp.minimality);
  if (ladder.empty()) return rep;

  std::vector<long> d;
  for (size_t j = 0; j < dir.dim(); ++j) d.push_back(dir.component(j));
  std::vector<GaussRat> exact = ray_coefficients(gf, d, ladder.back());
  ap::Precision prec = opts.precision;

  std::vector<CriticalPoint> family{cp};
  for (const auto& s : cp.siblings) {
    CriticalPoint sib = cp;
    sib.coords = s;
    sib.axis = check_simple_pole(gf, s).axis;
    family.push_back(sib);
  }

  for (long m : ladder) {
    CompareRow row;
    for (long c : d) row.index.push_back(m * c);
    const GaussRat& a = exact[static_cast<size_t>(m)];
    row.exact = a.to_string();
    ap::Complex est = evaluate_expansion(e, row.index, terms);
    row.estimate = decimal(est, 20);
    ap::Real scale = ap::Real::zero(prec);
    for (const auto& p : e.parts) scale = std::max(scale, ap::abs(evaluate_expansion(p, row.index, terms)));
    row.abs_estimate = short_decimal(scale.is_zero() ? scale : ap::abs(est) / scale);
    ap::Complex av = a.to_complex(prec);
    if (!a.is_zero()) row.rel_error = short_decimal(ap::abs(est - av) / ap::abs(av));
    if (with_quadrature) {
      ap::Complex q = ap::Complex::zero(prec);
      for (const auto& p : family) {
        ap::Complex v = xi_quadrature(gf, p, row.index);
        ap::Complex lg = ap::Complex::zero(prec);
        for (size_t j = 0; j < row.index.size(); ++j) lg -= ap::Complex(ap::Real(row.index[j])) * ap::log(p.coords[j]);
        q += v * ap::exp(lg);
      }
      if (e.real_coefficients) q = ap::Complex(q.real());
      row.quadrature = decimal(q, 20);
      if (!a.is_zero()) row.quadrature_rel_error = short_decimal(ap::abs(q - av) / ap::abs(av));
    }
    rep.rows.push_back(std::move(row));
  }
  double prev = INFINITY;
  for (const auto& row : rep.rows) {
    if (row.rel_error.empty()) continue;
    double err = std::stod(row.rel_error);
    if (err > prev * (1 + 1e-9)) rep.converged = false;
    prev = err;
  }
  return rep;
}

std::string compare_text(const CompareReport& r) {
  std::ostringstream os;
  os << "direction " << r.direction << ", " << r.terms << " term(s), point (";
  for (size_t j = 0; j < r.point.size(); ++j) os << (j ? ", " : "") << r.point[j];
  os << "), " << r.minimality << "\n";
  bool quad = !r.rows.empty() && r.rows[0].quadrature.has_value();
  os << std::left << std::setw(16) << "index" << std::setw(40) << "exact" << std::setw(30) << "estimate"
     << std::setw(14) << "rel_error";
  if (quad) os << std::setw(14) << "quad_rel_err";
  os << "\n";
  for (const auto& row : r.rows) {
    std::string exact = row.exact.size() > 38 ? row.exact.substr(0, 35) + "..." : row.exact;
    std::string est = row.estimate.size() > 28 ? row.estimate.substr(0, 28) : row.estimate;
    std::string err = row.rel_error.empty() ? "exact 0 (|est|/scale " + row.abs_estimate + ")" : row.rel_error;
    os << std::setw(16) << join_index(row.index) << std::setw(40) << exact << std::setw(30) << est << std::setw(14)
       << err;
    if (quad) os << std::setw(14) << row.quadrature_rel_error.value_or("-");
    os << "\n";
  }
  os << "converged: " << (r.converged ? "yes" : "no") << "\n";
  return os.str();
}

std::string compare_json(const CompareReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"index", row.index}, {"exact", row.exact}, {"estimate", row.estimate},
           {"rel_error", row.rel_error}, {"abs_estimate", row.abs_estimate}};
    if (row.quadrature) j["quadrature"] = *row.quadrature;
    if (row.quadrature_rel_error) j["quadrature_rel_error"] = *row.quadrature_rel_error;
    rows.push_back(j);
  }
  json j{{"command", "compare"}, {"direction", r.direction}, {"point", r.point}, {"minimality", r.minimality},
         {"terms", r.terms},     {"rows", rows},             {"converged", r.converged}};
  return j.dump(2);
}

CompareReport compare_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    CompareReport r;
    r.direction = j.at("direction").get<std::string>();
    r.point = j.at("point").get<std::vector<std::string>>();
    r.minimality = j.at("minimality").get<std::string>();
    r.terms = j.at("terms").get<int>();
    r.converged = j.at("converged").get<bool>();
    for (const auto& jr : j.at("rows")) {
      CompareRow row;
      row.index = jr.at("index").get<std::vector<long>>();
      row.exact = jr.at("exact").get<std::string>();
      row.estimate = jr.at("estimate").get<std::string>();
      row.rel_error = jr.at("rel_error").get<std::string>();
      row.abs_estimate = jr.at("abs_estimate").get<std::string>();
      if (jr.contains("quadrature")) row.quadrature = jr.at("quadrature").get<std::string>();
      if (jr.contains("quadrature_rel_error")) row.quadrature_rel_error = jr.at("quadrature_rel_error").get<std::string>();
      r.rows.push_back(std::move(row));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, kModule, std::string("malformed compare report: ") + e.what());
  }
}

std::string critical_text(const std::vector<CriticalPoint>& pts, const std::vector<std::optional<int>>& ks) {
  std::ostringstream os;
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    os << "point " << i << ": " << point_text(p.coords, 12) << "\n";
    os << "  residual " << short_decimal(p.residual, 3) << ", pole_simple " << (p.pole_simple ? "yes" : "no")
       << ", axis " << p.axis << ", " << to_string(p.minimality) << (p.certified ? "" : " (sampled)");
    if (ks[i]) os << ", k " << *ks[i];
    os << "\n";
    for (const auto& s : p.siblings) os << "  sibling " << point_text(s, 12) << "\n";
  }
  return os.str();
}

std::string critical_json(const std::vector<CriticalPoint>& pts, const std::vector<std::optional<int>>& ks) {
  json a = json::array();
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    json sib = json::array();
    for (const auto& s : p.siblings) sib.push_back(point_json(s));
    json j{{"coords", point_json(p.coords)},
           {"residual", p.residual.to_string(6)},
           {"pole_simple", p.pole_simple},
           {"axis", p.axis},
           {"minimality", to_string(p.minimality)},
           {"certified", p.certified},
           {"siblings", sib}};
    if (ks[i]) j["k"] = *ks[i];
    a.push_back(j);
  }
  return json{{"command", "critical"}, {"points", a}}.dump(2);
}

std::string asymp_text(const CombinedExpansion& e, const std::vector<std::string>& vars) {
  std::ostringstream os;
  for (const auto& p : e.parts) {
    os << "point " << point_text(p.point, 20) << "\n";
    os << "  " << formula_string(p, vars) << "\n";
    os << "  k = " << p.k << ", l0 = " << p.l0;
    if (p.dim == 2) os << ", c_k = " << decimal(p.ck, 12);
    os << ", scale axis " << vars[p.scale_axis] << "\n";
    for (const auto& t : p.terms) {
      os << "  C_" << t.l << " = " << decimal(t.coeff, 20) << "   (power " << t.exponent.get_str() << ")\n";
    }
  }
  if (e.parts.size() > 1) os << "sum of " << e.parts.size() << " contributions on one torus";
  if (e.parts.size() > 1) os << (e.real_coefficients ? ", real part taken" : "") << "\n";
  return os.str();
}

std::string asymp_json(const CombinedExpansion& e, const std::vector<std::string>& vars) {
  json parts = json::array();
  for (const auto& p : e.parts) {
    json terms = json::array();
    for (const auto& t : p.terms) {
      terms.push_back({{"l", t.l},
                       {"re", t.coeff.real().to_string(0)},
                       {"im", t.coeff.imag().to_string(0)},
                       {"exponent", t.exponent.get_str()}});
    }
    json lb = json::array();
    for (const auto& c : p.log_base) lb.push_back(complex_json(c));
    parts.push_back({{"point", point_json(p.point)},
                     {"log_base", lb},
                     {"scale_axis", p.scale_axis},
                     {"k", p.k},
                     {"l0", p.l0},
                     {"c_k", complex_json(p.ck)},
                     {"terms", terms},
                     {"siblings_included", p.siblings_included},
                     {"formula", formula_string(p, vars)}});
  }
  return json{{"command", "asymp"}, {"real_part", e.real_coefficients}, {"expansions", parts}}.dump(2);
}

}  // namespace acsv
