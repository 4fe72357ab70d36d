#include "acsv/properties.hpp"

#include <algorithm>
#include <cmath>

#include "acsv/error.hpp"

namespace acsv {

namespace {

double rel(const ap::Complex& a, const ap::Complex& b) {
  return (ap::abs(a - b) / (ap::Real(1.0, a.precision()) + ap::abs(b))).to_double();
}

double tol_bits(ap::Precision prec, long slack) { return std::ldexp(1.0, -static_cast<int>(prec - slack)); }

// -(w - g) G(z, w) / (w H(z, w)) as w -> g along w = g (1 + delta), with
// Richardson extrapolation over halving delta.
ap::Complex amplitude_limit(const RationalGF& gf, const Point& pt, size_t axis) {
  ap::Precision prec = pt[0].precision();
  const int levels = 8;
  std::vector<std::vector<ap::Complex>> t(levels);
  ap::Real delta = ap::Real::pow2(-10, prec);
  for (int i = 0; i < levels; ++i) {
    Point p = pt;
    ap::Complex step = pt[axis] * ap::Complex(delta);
    p[axis] += step;
    ap::Complex v = -(step * gf.numerator().eval(p)) / (p[axis] * gf.denominator().eval(p));
    t[i].push_back(v);
    for (int j = 1; j <= i; ++j) {
      ap::Complex f = ap::Complex(ap::Real::pow2(j, prec));
      t[i].push_back((f * t[i][j - 1] - t[i - 1][j - 1]) / (f - ap::Complex(ap::Real(1.0, prec))));
    }
    delta = ap::ldexp(delta, -1);
  }
  return t[levels - 1][levels - 1];
}

}  // namespace

PropertyResult check_implicit_series(const RationalGF& gf, const Point& pt) {
  ap::Precision prec = pt[0].precision();
  FormalSeries g = implicit_g_series(gf, pt, 4);
  ClosedForms c = closed_forms_2d(gf, pt, Direction::from_ints({1, 1}));
  double e = std::max(rel(g[1], c.g1), rel(ap::Complex(2) * g[2], c.g2));
  return {"implicit series vs closed-form g', g''", e, tol_bits(prec, 16)};
}

std::vector<PropertyResult> check_properties(const RationalGF& gf, const Direction& dir, const SearchOptions& opts) {
  std::vector<PropertyResult> out;
  ap::Precision prec = opts.precision;
  CriticalPoint cp = contributing_point(gf, dir, opts);
  size_t d = gf.dim();

  DirInfo info = dir_of(gf, cp.coords, cp.axis);
  double realness = 0;
  for (const auto& r : info.ratios) {
    realness = std::max(realness, ap::abs(r.imag()).to_double());
    realness = std::max(realness, -r.real().to_double());
  }
  out.push_back({"dir ratios real and nonnegative", realness, 1e-20});

  if (d >= 3) {
    Frame fr = make_frame(gf, cp.coords, dir, cp.axis);
    const MultiPoly& h = fr.gf.denominator();
    ap::Complex wd = fr.z[d - 1] * h.partial(d - 1).eval(fr.z);
    double grad = 0;
    for (size_t j = 0; j + 1 < d; ++j) {
      ap::Complex zj = fr.z[j] * h.partial(j).eval(fr.z);
      ap::Complex g = -zj / wd + ap::Complex(ap::Real(fr.dir.ratio(j, d - 1), prec));
      grad = std::max(grad, ap::abs(g).to_double());
    }
    out.push_back({"phase gradient vanishes", grad, 1e-20});
    return out;
  }

  LocalData2d ld = local_data_2d(gf, cp.coords, dir, cp.axis, 8);
  const Frame& fr = ld.frame;
  ClosedForms c = closed_forms_2d(fr.gf, fr.z, fr.dir);
  out.push_back(check_implicit_series(fr.gf, fr.z));

  // f~'(0) straight from g~, before phase_series clears it.
  ap::Complex f1 = ld.g_tilde[1] / ld.g_tilde[0] +
                   ap::Complex::i(prec) * ap::Complex(ap::Real(fr.dir.ratio(0, 1), prec));
  out.push_back({"phase gradient vanishes", ap::abs(f1).to_double(), 1e-20});

  out.push_back({"phase series vs closed-form f~''", rel(ap::Complex(2) * ld.phase.f[2], c.ft2), tol_bits(prec, 16)});

  ap::Complex m = -(fr.z[1] * fr.gf.denominator().partial(1).eval(fr.z));
  out.push_back({"Q = (-w H_w)^3 f~''(0)", rel(m * m * m * c.ft2, c.q), tol_bits(prec, 16)});

  ap::Complex limit = amplitude_limit(fr.gf, fr.z, 1);
  out.push_back({"amplitude limit vs G/(-w H_w)", rel(limit, c.psi0), 1e-10});

  bool leading_applies = ld.phase.k == 2 && ld.l0 == 0;
  if (leading_applies && (cp.minimality == Minimality::strict || cp.minimality == Minimality::finitely_minimal)) {
    CriticalPoint strict = cp;
    strict.minimality = Minimality::strict;
    AsymptoticExpansion e = expand_2d(gf, strict, 1);
    LeadingSimple ls = leading_simple_2d(gf, strict);
    out.push_back({"leading_simple_2d vs expand_2d", rel(ls.coefficient, e.terms[0].coeff), tol_bits(prec, 20)});

    // The same physical point expanded along the other axis, and the
    // transposed GF: both 1-term estimates must agree.
    std::vector<long> r{dir.component(0) * 10, dir.component(1) * 10};
    ap::Complex base = evaluate_expansion(e, r, 1);
    CriticalPoint other = strict;
    other.axis = 1 - cp.axis;
    ap::Complex alt = evaluate_expansion(expand_2d(gf, other, 1), r, 1);
    std::vector<size_t> swap{1, 0};
    RationalGF tgf = gf.permuted(swap);
    Direction tdir = dir.permuted(swap);
    CriticalPoint tcp = contributing_point(tgf, tdir, opts);
    tcp.minimality = Minimality::strict;
    // Finitely minimal families may be represented by another sibling.
    Point swapped{cp.coords[1], cp.coords[0]};
    auto same = [&](const Point& p) {
      return ap::abs(p[0] - swapped[0]).to_double() + ap::abs(p[1] - swapped[1]).to_double() < 1e-20;
    };
    if (!same(tcp.coords)) {
      for (const auto& s : tcp.siblings) {
        if (same(s)) {
          tcp.coords = s;
          tcp.axis = check_simple_pole(tgf, s).axis;
        }
      }
    }
    std::vector<long> tr{r[1], r[0]};
    ap::Complex trans = evaluate_expansion(expand_2d(tgf, tcp, 1), tr, 1);
    double sym = std::max(rel(alt, base), rel(trans, base));
    out.push_back({"transposition symmetry of the 1-term estimate", sym, tol_bits(prec, 20)});
  }
  return out;
}

}  // namespace acsv
