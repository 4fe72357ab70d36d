#include "acsv/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "acsv/error.hpp"
#include "acsv/roots.hpp"

namespace acsv {

namespace {

const char* kModule = "smooth-asymptotics";

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

ap::Complex one(ap::Precision prec) { return ap::Complex(ap::Real(1.0, prec)); }

ap::Complex two_pi(ap::Precision prec) { return ap::Complex(ap::ldexp(ap::Real::pi(prec), 1)); }

ap::Real mpq_real(const mpq_class& q, ap::Precision prec) { return ap::Real(q, prec); }

void require_simple(const CriticalPoint& cp) {
  if (!cp.pole_simple) fail(ErrorKind::out_of_scope, "pole not simple: out of scope");
}

// exp(i theta) - 1 as a series in theta, times z.
FormalSeries z_times_expm1(const ap::Complex& z, int order) {
  ap::Precision prec = z.precision();
  std::vector<ap::Complex> c{ap::Complex::zero(prec)};
  ap::Complex term = one(prec);
  for (int j = 1; j <= order; ++j) {
    term = term * ap::Complex::i(prec) / ap::Complex(static_cast<long>(j));
    c.push_back(z * term);
  }
  return FormalSeries(std::move(c));
}

// Characteristic polynomial coefficients (lowest first) by Faddeev-LeVerrier.
std::vector<ap::Complex> char_poly(const std::vector<std::vector<ap::Complex>>& a, ap::Precision prec) {
  size_t n = a.size();
  std::vector<ap::Complex> c(n + 1, ap::Complex::zero(prec));
  c[n] = one(prec);
  std::vector<std::vector<ap::Complex>> m(n, std::vector<ap::Complex>(n, ap::Complex::zero(prec)));
  for (size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<ap::Complex>> next(n, std::vector<ap::Complex>(n, ap::Complex::zero(prec)));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        for (size_t t = 0; t < n; ++t) next[i][j] += a[i][t] * m[t][j];
      }
      next[i][i] += c[n - k + 1];
    }
    m = std::move(next);
    ap::Complex tr = ap::Complex::zero(prec);
    for (size_t i = 0; i < n; ++i)
      for (size_t t = 0; t < n; ++t) tr += a[i][t] * m[t][i];
    c[n - k] = -tr / ap::Complex(static_cast<long>(k));
  }
  return c;
}

}  // namespace

Frame make_frame(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis) {
  size_t d = gf.dim();
  if (pt.size() != d || dir.dim() != d || axis >= d) fail(ErrorKind::domain, "dimension mismatch");
  std::vector<size_t> perm;
  for (size_t j = 0; j < d; ++j)
    if (j != axis) perm.push_back(j);
  perm.push_back(axis);
  Point z;
  for (size_t j : perm) z.push_back(pt[j]);
  return Frame{perm, gf.permuted(perm), std::move(z), dir.permuted(perm)};
}

FormalSeries implicit_g_series(const RationalGF& gf, const Point& pt, int order) {
  if (gf.dim() != 2) fail(ErrorKind::domain, "implicit_g_series works in two variables");
  if (order < 1) fail(ErrorKind::domain, "order must be positive");
  ap::Precision prec = pt[0].precision();
  const MultiPoly& h = gf.denominator();
  MultiPoly hw = h.partial(1);
  if (ap::abs(hw.eval(pt)) <= eps_zero(prec)) fail(ErrorKind::numerical, "H_w vanishes at the point");
  FormalSeries x = FormalSeries::x(order, prec) + pt[0];
  FormalSeries y = FormalSeries::zero(order, prec);
  int iters = 2;
  for (int have = 1; have <= order; have *= 2) ++iters;
  for (int it = 0; it < iters; ++it) {
    FormalSeries big_y = y + pt[1];
    std::vector<FormalSeries> args{x, big_y};
    FormalSeries hv = poly_eval_series(h, args);
    FormalSeries dv = poly_eval_series(hw, args);
    y = y - ps_div(hv, dv);
    y[0] = ap::Complex::zero(prec);  // g(z) = w exactly
  }
  return y + pt[1];
}

FormalSeries g_tilde_series(const FormalSeries& g, const ap::Complex& z) {
  return ps_compose(g, z_times_expm1(z, g.order()));
}

Phase phase_series(const FormalSeries& g_tilde, const mpq_class& r_over_s) {
  ap::Precision prec = g_tilde.precision();
  ap::Real eps = eps_zero(prec);
  ap::Complex w = g_tilde[0];
  FormalSeries q = g_tilde * (one(prec) / w);
  q[0] = ap::Complex::zero(prec);
  Phase ph;
  ph.f = ps_log1p(q);
  if (ph.f.order() >= 1) ph.f[1] += ap::Complex::i(prec) * ap::Complex(mpq_real(r_over_s, prec));
  if (ap::abs(ph.f[0]) > eps || (ph.f.order() >= 1 && ap::abs(ph.f[1]) > eps)) {
    fail(ErrorKind::numerical,
         "phase has a nonvanishing linear term: the direction does not match the point (|f'(0)| = " +
             ap::abs(ph.f[1]).to_string(6) + ")");
  }
  ph.f[0] = ap::Complex::zero(prec);
  if (ph.f.order() >= 1) ph.f[1] = ap::Complex::zero(prec);
  ph.k = ph.f.valuation(eps);
  if (ph.k < 0) fail(ErrorKind::numerical, "phase vanishes to the truncation order");
  ph.ck = ph.f[static_cast<size_t>(ph.k)];
  if (ph.ck.real() < -eps) fail(ErrorKind::domain, "leading phase coefficient has negative real part (point not minimal)");
  if (ph.k % 2 == 1) {
    if (ap::abs(ph.ck.real()) > eps) {
      fail(ErrorKind::numerical, "odd order of vanishing with a leading coefficient that is not purely imaginary");
    }
    ph.ck = ap::Complex(ap::Real::zero(prec), ph.ck.imag());
    ph.f[static_cast<size_t>(ph.k)] = ph.ck;
  }
  return ph;
}

FormalSeries amplitude_series(const RationalGF& gf, const Point& pt, const FormalSeries& g_tilde) {
  ap::Precision prec = pt[0].precision();
  MultiPoly hw = gf.denominator().partial(1);
  ap::Complex m = -(pt[1] * hw.eval(pt));
  if (ap::abs(m) <= eps_zero(prec)) fail(ErrorKind::numerical, "-w H_w vanishes at the point");
  FormalSeries big_z = z_times_expm1(pt[0], g_tilde.order()) + pt[0];
  std::vector<FormalSeries> args{big_z, g_tilde};
  FormalSeries num = poly_eval_series(gf.numerator(), args);
  FormalSeries den = -(g_tilde * poly_eval_series(hw, args));
  return ps_div(num, den);
}

GammaConstants gamma_constants(int k, int l, const ap::Complex& ck) {
  if (k < 2) fail(ErrorKind::domain, "k must be at least 2");
  if (l < 0) fail(ErrorKind::domain, "l must be nonnegative");
  ap::Precision prec = std::max<ap::Precision>(ck.precision(), ap::kMinPrecision);
  ap::Real p = ap::Real(mpq_class(l + 1, k), prec);
  GammaConstants g;
  g.a_plus = ap::tgamma(p) / ap::Real(static_cast<long>(k));
  if (k % 2 == 0) {
    g.a = l % 2 == 0 ? ap::Complex(ap::ldexp(g.a_plus, 1)) : ap::Complex::zero(prec);
  } else {
    if (ap::abs(ck.real()) > eps_zero(prec)) fail(ErrorKind::domain, "k odd requires a purely imaginary c_k");
    // Both half-lines: A+ (1 + e^{i pi (l + (l+1)/k)}) for Im c_k > 0.
    ap::Real angle = ap::Real::pi(prec) * (ap::Real(static_cast<long>(l)) + p);
    g.a = ap::Complex(g.a_plus) * (one(prec) + ap::expi(angle));
  }
  g.a_cal = ck.imag().sign() >= 0 ? g.a : ap::conj(g.a);
  return g;
}

std::vector<ap::Complex> bstar_coefficients(const FormalSeries& phase, const FormalSeries& amplitude, int k,
                                            int count) {
  if (count < 1) return {};
  if (phase.order() < count + k - 1) fail(ErrorKind::domain, "phase series too short for the requested b* count");
  if (amplitude.order() < count - 1) fail(ErrorKind::domain, "amplitude series too short for the requested b* count");
  FormalSeries y = ps_kth_root(phase.truncated(count + k - 1), k);  // order count
  FormalSeries eta = ps_revert(y);
  FormalSeries psi_eta = ps_compose(amplitude.truncated(count - 1), eta.truncated(count - 1));
  FormalSeries prod = psi_eta * eta.derivative();
  std::vector<ap::Complex> out;
  for (int l = 0; l < count; ++l) out.push_back(prod[static_cast<size_t>(l)]);
  return out;
}

LocalData2d local_data_2d(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis, int order) {
  if (gf.dim() != 2) fail(ErrorKind::domain, "local_data_2d works in two variables");
  LocalData2d ld{make_frame(gf, pt, dir, axis), {}, {}, {}, {}, 0};
  const Frame& fr = ld.frame;
  ld.g = implicit_g_series(fr.gf, fr.z, order);
  ld.g_tilde = g_tilde_series(ld.g, fr.z[0]);
  ld.phase = phase_series(ld.g_tilde, fr.dir.ratio(0, 1));
  ld.amplitude = amplitude_series(fr.gf, fr.z, ld.g_tilde);
  ld.l0 = ld.amplitude.valuation(eps_zero(pt[0].precision()));
  if (ld.l0 < 0) fail(ErrorKind::numerical, "amplitude vanishes to the truncation order (G vanishes on V?)");
  return ld;
}

ClosedForms closed_forms_2d(const RationalGF& gf, const Point& pt, const Direction& /*dir*/) {
  const MultiPoly& h = gf.denominator();
  MultiPoly hz = h.partial(0), hw = h.partial(1);
  ap::Complex z = pt[0], w = pt[1];
  ap::Complex Hz = hz.eval(pt), Hw = hw.eval(pt);
  ap::Complex Hzz = hz.partial(0).eval(pt), Hzw = hz.partial(1).eval(pt), Hww = hw.partial(1).eval(pt);
  ClosedForms c;
  c.g1 = -Hz / Hw;
  c.g2 = -(Hzz + ap::Complex(2) * Hzw * c.g1 + Hww * c.g1 * c.g1) / Hw;
  c.psi0 = gf.numerator().eval(pt) / (-(w * Hw));
  c.ft2 = -(z * (c.g1 + z * c.g2)) / w + z * z * c.g1 * c.g1 / (w * w);
  ap::Complex zHz = z * Hz, wHw = w * Hw;
  c.q = -(w * Hw * wHw * zHz) - wHw * z * Hz * zHz -
        w * w * z * z * (Hw * Hw * Hzz + Hz * Hz * Hww - ap::Complex(2) * Hz * Hw * Hzw);
  return c;
}

namespace {

AsymptoticExpansion expand_2d_point(const RationalGF& gf, const CriticalPoint& cp, int num_terms) {
  require_simple(cp);
  if (num_terms < 1) fail(ErrorKind::domain, "at least one term is required");
  ap::Precision prec = cp.coords[0].precision();
  int order = num_terms + 8;
  LocalData2d ld = local_data_2d(gf, cp.coords, cp.direction, cp.axis, order);
  int k = ld.phase.k, l0 = ld.l0;
  int need = l0 + num_terms - 1 + k;
  if (need > order) ld = local_data_2d(gf, cp.coords, cp.direction, cp.axis, need);
  auto bstar = bstar_coefficients(ld.phase.f, ld.amplitude, k, l0 + num_terms);
  AsymptoticExpansion e;
  e.point = cp.coords;
  for (const auto& x : cp.coords) e.log_base.push_back(ap::log(x));
  e.scale_axis = cp.axis;
  e.dim = 2;
  e.k = k;
  e.l0 = l0;
  e.ck = ld.phase.ck;
  e.precision = prec;
  for (int l = l0; l < l0 + num_terms; ++l) {
    GammaConstants g = gamma_constants(k, l, ld.phase.ck);
    ap::Complex c = g.a_cal.is_zero() ? ap::Complex::zero(prec) : g.a_cal * bstar[static_cast<size_t>(l)] / two_pi(prec);
    mpq_class ex(-(l + 1), k);
    ex.canonicalize();
    e.terms.push_back({l, c, ex});
  }
  return e;
}

}  // namespace

AsymptoticExpansion expand_2d(const RationalGF& gf, const CriticalPoint& cp, int num_terms) {
  if (gf.dim() != 2) fail(ErrorKind::domain, "expand_2d works in two variables");
  if (cp.minimality != Minimality::strict) {
    fail(ErrorKind::domain, "expand_2d needs a strictly minimal point (got " + to_string(cp.minimality) +
                                "); finitely minimal points go through combine_finitely_minimal");
  }
  return expand_2d_point(gf, cp, num_terms);
}

LeadingSimple leading_simple_2d(const RationalGF& gf, const CriticalPoint& cp) {
  if (gf.dim() != 2) fail(ErrorKind::domain, "leading_simple_2d works in two variables");
  require_simple(cp);
  Frame fr = make_frame(gf, cp.coords, cp.direction, cp.axis);
  ap::Precision prec = cp.coords[0].precision();
  ClosedForms c = closed_forms_2d(fr.gf, fr.z, fr.dir);
  ap::Real eps = eps_zero(prec);
  if (ap::abs(c.q) <= eps) fail(ErrorKind::numerical, "Q vanishes: degenerate phase (k > 2), use the full expansion");
  ap::Complex g = fr.gf.numerator().eval(fr.z);
  if (ap::abs(g) <= eps) fail(ErrorKind::numerical, "G vanishes at the point; use the full expansion");
  ap::Complex m = -(fr.z[1] * fr.gf.denominator().partial(1).eval(fr.z));
  ap::Complex root = ap::sqrt(c.q / (m * m * m));
  LeadingSimple out;
  out.q = c.q;
  out.coefficient = g / (ap::Complex(ap::sqrt(ap::ldexp(ap::Real::pi(prec), 1))) * m * root);
  return out;
}

HigherDData higher_d_data(const RationalGF& gf, const CriticalPoint& cp) {
  require_simple(cp);
  size_t d = gf.dim();
  ap::Precision prec = cp.coords[0].precision();
  HigherDData out{make_frame(gf, cp.coords, cp.direction, cp.axis), {}, {}, {}};
  const Frame& fr = out.frame;
  const MultiPoly& h = fr.gf.denominator();
  const Point& z = fr.z;
  size_t n = d - 1;
  std::vector<ap::Complex> hj(d);
  std::vector<std::vector<ap::Complex>> hjk(d, std::vector<ap::Complex>(d));
  for (size_t j = 0; j < d; ++j) {
    MultiPoly pj = h.partial(j);
    hj[j] = pj.eval(z);
    for (size_t k = 0; k < d; ++k) hjk[j][k] = pj.partial(k).eval(z);
  }
  const ap::Complex& hd = hj[d - 1];
  if (ap::abs(hd) <= eps_zero(prec)) fail(ErrorKind::numerical, "H_d vanishes at the point");
  const ap::Complex& w = z[d - 1];
  std::vector<ap::Complex> g(n);
  for (size_t j = 0; j < n; ++j) g[j] = -hj[j] / hd;
  // Stationarity: z_j g_j / w + r_j / r_d = 0.
  for (size_t j = 0; j < n; ++j) {
    ap::Complex grad = z[j] * g[j] / w + ap::Complex(ap::Real(fr.dir.ratio(j, d - 1), prec));
    if (ap::abs(grad) > eps_zero(prec)) {
      fail(ErrorKind::numerical, "phase gradient does not vanish: the direction does not match the point");
    }
  }
  out.hessian.assign(n, std::vector<ap::Complex>(n));
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < n; ++k) {
      ap::Complex gjk =
          -(hjk[j][k] + hjk[j][d - 1] * g[k] + hjk[k][d - 1] * g[j] + hjk[d - 1][d - 1] * g[j] * g[k]) / hd;
      ap::Complex v = -(z[j] * z[k] * (gjk / w - g[j] * g[k] / (w * w)));
      if (j == k) v -= z[j] * g[j] / w;
      out.hessian[j][k] = v;
    }
  }
  auto cp_coeffs = char_poly(out.hessian, prec);
  try {
    out.eigenvalues = aberth_roots(cp_coeffs, prec);
  } catch (const Error&) {
    // Repeated eigenvalues slow the polish down; double accuracy is enough
    // to pick square-root branches (the product itself comes from det).
    std::vector<std::complex<double>> cd;
    for (const auto& c : cp_coeffs) cd.push_back(c.to_std());
    out.eigenvalues.clear();
    for (auto r : aberth_roots(cd)) out.eigenvalues.emplace_back(r, prec);
  }
  out.psi0 = fr.gf.numerator().eval(z) / (-(w * hd));
  return out;
}

AsymptoticExpansion leading_higher_d(const RationalGF& gf, const CriticalPoint& cp) {
  size_t d = gf.dim();
  if (d < 3) fail(ErrorKind::domain, "leading_higher_d needs at least three variables");
  if (cp.minimality != Minimality::strict) {
    fail(ErrorKind::domain, "leading_higher_d needs a strictly minimal point (got " + to_string(cp.minimality) + ")");
  }
  ap::Precision prec = cp.coords[0].precision();
  HigherDData hd = higher_d_data(gf, cp);
  ap::Real eps = eps_zero(prec);
  if (ap::abs(hd.psi0) <= eps) {
    fail(ErrorKind::out_of_scope, "G vanishes at the point; only the nonvanishing leading term is available for d >= 3");
  }
  size_t n = d - 1;
  auto cpoly = char_poly(hd.hessian, prec);
  ap::Complex det = (n % 2 == 0) ? cpoly[0] : -cpoly[0];
  if (ap::abs(det) <= eps) fail(ErrorKind::numerical, "singular Hessian");
  std::complex<double> approx = 1.0;
  for (const auto& mu : hd.eigenvalues) {
    if (mu.real().sign() <= 0) fail(ErrorKind::numerical, "Hessian eigenvalue with nonpositive real part");
    approx /= std::sqrt(mu.to_std());
  }
  ap::Complex inv_root = one(prec) / ap::sqrt(det);
  if (std::abs(inv_root.to_std() - approx) > std::abs(-inv_root.to_std() - approx)) inv_root = -inv_root;
  ap::Complex c0 = ap::Complex(ap::pow(ap::ldexp(ap::Real::pi(prec), 1), ap::Real(mpq_class(1 - long(d), 2), prec))) *
                   inv_root * hd.psi0;
  AsymptoticExpansion e;
  e.point = cp.coords;
  for (const auto& x : cp.coords) e.log_base.push_back(ap::log(x));
  e.scale_axis = cp.axis;
  e.dim = d;
  e.k = 2;
  e.l0 = 0;
  e.precision = prec;
  mpq_class ex(1 - long(d), 2);
  ex.canonicalize();
  e.terms.push_back({0, c0, ex});
  return e;
}

CombinedExpansion combine_finitely_minimal(std::vector<AsymptoticExpansion> expansions) {
  if (expansions.empty()) fail(ErrorKind::domain, "no expansions to combine");
  for (const auto& e : expansions) {
    if (e.k != expansions[0].k) fail(ErrorKind::domain, "mismatched k across sibling points");
    if (e.terms.size() != expansions[0].terms.size()) fail(ErrorKind::domain, "mismatched term counts");
  }
  if (expansions.size() > 1)
    for (auto& e : expansions) e.siblings_included = true;
  CombinedExpansion c;
  c.parts = std::move(expansions);
  return c;
}

ap::Complex evaluate_expansion(const AsymptoticExpansion& e, std::span<const long> r, int num_terms) {
  if (r.size() != e.dim) fail(ErrorKind::domain, "index dimension mismatch");
  if (num_terms < 1) fail(ErrorKind::domain, "at least one term must be evaluated");
  if (static_cast<size_t>(num_terms) > e.terms.size()) {
    fail(ErrorKind::domain, "requested " + std::to_string(num_terms) + " terms but only " +
                                std::to_string(e.terms.size()) + " are stored");
  }
  long rd = r[e.scale_axis];
  if (rd < 1) fail(ErrorKind::domain, "index on the scale axis must be at least 1");
  ap::Precision prec = e.precision;
  ap::Complex expo = ap::Complex::zero(prec);
  for (size_t j = 0; j < e.dim; ++j) expo -= ap::Complex(ap::Real(r[j])) * e.log_base[j];
  ap::Complex sum = ap::Complex::zero(prec);
  ap::Real base(mpz_class(rd), prec);
  for (int i = 0; i < num_terms; ++i) {
    const auto& t = e.terms[static_cast<size_t>(i)];
    if (t.coeff.is_zero()) continue;
    sum += t.coeff * ap::Complex(ap::pow(base, ap::Real(t.exponent, prec)));
  }
  return ap::exp(expo) * sum;
}

ap::Complex evaluate_expansion(const CombinedExpansion& e, std::span<const long> r, int num_terms) {
  if (e.parts.empty()) fail(ErrorKind::domain, "empty expansion");
  ap::Complex sum = ap::Complex::zero(e.parts[0].precision);
  for (const auto& p : e.parts) sum += evaluate_expansion(p, r, num_terms);
  if (e.real_coefficients) sum = ap::Complex(sum.real());
  return sum;
}

CombinedExpansion asymptotics_for(const RationalGF& gf, const Direction& dir, int num_terms,
                                  const SearchOptions& opts) {
  if (num_terms < 1) fail(ErrorKind::domain, "at least one term is required");
  CriticalPoint cp = contributing_point(gf, dir, opts);
  bool real = gf.numerator().has_real_coefficients() && gf.denominator().has_real_coefficients();
  CombinedExpansion out;
  if (gf.dim() >= 3) {
    if (num_terms > 1) fail(ErrorKind::out_of_scope, "only the leading term is available for d >= 3");
    out = combine_finitely_minimal({leading_higher_d(gf, cp)});
  } else if (cp.minimality == Minimality::strict) {
    out = combine_finitely_minimal({expand_2d(gf, cp, num_terms)});
  } else {
    std::vector<AsymptoticExpansion> parts{expand_2d_point(gf, cp, num_terms)};
    for (const auto& s : cp.siblings) {
      CriticalPoint sib = cp;
      sib.coords = s;
      PoleCheck pc = check_simple_pole(gf, s);
      if (!pc.simple) fail(ErrorKind::out_of_scope, "sibling point is not a simple pole");
      sib.axis = pc.axis;
      sib.siblings.clear();
      parts.push_back(expand_2d_point(gf, sib, num_terms));
    }
    out = combine_finitely_minimal(std::move(parts));
  }
  out.real_coefficients = real;
  return out;
}

std::string formula_string(const AsymptoticExpansion& e, const std::vector<std::string>& vars) {
  std::vector<std::string> idx;
  if (e.dim == 2) {
    idx = {"r", "s"};
  } else {
    for (size_t j = 0; j < e.dim; ++j) idx.push_back("r" + std::to_string(j + 1));
  }
  std::string out = "a_r ≈ ";
  for (size_t j = 0; j < e.dim; ++j) out += vars[j] + "^{−" + idx[j] + "} ";
  const std::string& rd = idx[e.scale_axis];
  if (e.dim == 2) {
    out += "Σ_{l≥" + std::to_string(e.l0) + "} C_l " + rd + "^{−(l+1)/" + std::to_string(e.k) + "}";
  } else {
    out += "C_0 " + rd + "^{(1−" + std::to_string(e.dim) + ")/2}";
  }
  return out;
}

}  // namespace acsv
