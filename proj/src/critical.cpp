#include "acsv/critical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "acsv/error.hpp"
#include "acsv/linalg.hpp"
#include "acsv/roots.hpp"
#include "acsv/series.hpp"
#include "acsv/univariate.hpp"

namespace acsv {

namespace {

const char* kModule = "critical-points";

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

constexpr ap::Precision kGuardBits = 32;

std::vector<std::complex<double>> to_std(const Point& p) {
  std::vector<std::complex<double>> out;
  for (const auto& x : p) out.push_back(x.to_std());
  return out;
}

Point to_ap(const std::vector<std::complex<double>>& p, ap::Precision prec) {
  Point out;
  for (auto x : p) out.emplace_back(x, prec);
  return out;
}

Point with_precision(const Point& p, ap::Precision prec) {
  Point out;
  for (const auto& x : p) out.push_back(x.with_precision(prec));
  return out;
}

double distance(const Point& a, const Point& b) {
  double s = 0;
  for (size_t j = 0; j < a.size(); ++j) s = std::max(s, ap::abs(a[j] - b[j]).to_double());
  return s;
}

double norm_of(const Point& a) {
  double s = 0;
  for (const auto& x : a) s = std::max(s, ap::abs(x).to_double());
  return s;
}

// Sum of |coefficient * monomial| at the point: the natural scale of H there.
double eval_scale(const MultiPoly& p, const std::vector<std::complex<double>>& x) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) {
    double t = std::hypot(c.real().get_d(), c.imag().get_d());
    for (size_t j = 0; j < x.size(); ++j) t *= std::pow(std::abs(x[j]), e[j]);
    s += t;
  }
  return s;
}

struct System {
  std::vector<MultiPoly> f;
  std::vector<std::vector<MultiPoly>> jac;  // jac[i][j] = d f_i / d x_j
};

System make_system(std::vector<MultiPoly> f) {
  System s;
  s.f = std::move(f);
  for (const auto& p : s.f) {
    std::vector<MultiPoly> row;
    for (size_t j = 0; j < p.dim(); ++j) row.push_back(p.partial(j));
    s.jac.push_back(std::move(row));
  }
  return s;
}

// Newton at precision `prec`. Returns the point if the step size falls below
// working precision within the iteration budget.
std::optional<Point> newton_polish(const System& sys, Point x, ap::Precision prec, int max_iter = 80) {
  x = with_precision(x, prec);
  size_t n = x.size();
  ap::Real tiny = ap::tolerance(prec, 6);
  int settled = 0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<ap::Complex> fx;
    Matrix<ap::Complex> j(n, std::vector<ap::Complex>(n));
    for (size_t i = 0; i < n; ++i) {
      fx.push_back(-sys.f[i].eval(x));
      for (size_t k = 0; k < n; ++k) j[i][k] = sys.jac[i][k].eval(x);
    }
    std::vector<ap::Complex> dx;
    if (!solve_linear(j, fx, dx)) {
      bool zero = std::all_of(fx.begin(), fx.end(), [](const ap::Complex& v) { return v.is_zero(); });
      if (zero) return x;
      return std::nullopt;
    }
    ap::Real step = ap::Real::zero(prec), size = ap::Real(1.0, prec);
    for (size_t i = 0; i < n; ++i) {
      x[i] += dx[i];
      step = std::max(step, ap::abs(dx[i]));
      size = std::max(size, ap::abs(x[i]));
    }
    if (!step.is_finite()) return std::nullopt;
    if (step <= tiny * size) {
      // one more sweep after the step has collapsed
      if (++settled >= 2) return x;
    }
  }
  return std::nullopt;
}

// Levenberg-Marquardt at precision `prec` with mu = |F|. Converges
// quadratically to a point of a positive-dimensional solution set too, where
// plain Newton stalls on the singular Jacobian.
std::optional<Point> lm_polish(const System& sys, Point x, ap::Precision prec, int max_iter = 120) {
  x = with_precision(x, prec);
  size_t n = x.size();
  ap::Real target = ap::tolerance(prec, 4);
  auto eval_f = [&](const Point& p) {
    std::vector<ap::Complex> f;
    for (const auto& q : sys.f) f.push_back(q.eval(p));
    return f;
  };
  auto fnorm = [&](const std::vector<ap::Complex>& f) {
    ap::Real s = ap::Real::zero(prec);
    for (const auto& v : f) s += ap::norm(v);
    return ap::sqrt(s);
  };
  auto f = eval_f(x);
  ap::Real nf = fnorm(f);
  for (int it = 0; it < max_iter; ++it) {
    if (nf <= target) return x;
    Matrix<ap::Complex> j(n, std::vector<ap::Complex>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) j[i][k] = sys.jac[i][k].eval(x);
    ap::Real mu = nf;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Matrix<ap::Complex> a(n, std::vector<ap::Complex>(n, ap::Complex::zero(prec)));
      std::vector<ap::Complex> b(n, ap::Complex::zero(prec));
      for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c)
          for (size_t i = 0; i < n; ++i) a[r][c] += ap::conj(j[i][r]) * j[i][c];
        a[r][r] += ap::Complex(mu);
        for (size_t i = 0; i < n; ++i) b[r] -= ap::conj(j[i][r]) * f[i];
      }
      std::vector<ap::Complex> dx;
      if (!solve_linear(a, b, dx)) return std::nullopt;
      Point xn = x;
      for (size_t i = 0; i < n; ++i) xn[i] += dx[i];
      auto fn = eval_f(xn);
      ap::Real nn = fnorm(fn);
      if (nn.is_finite() && nn < nf) {
        x = std::move(xn);
        f = std::move(fn);
        nf = nn;
        improved = true;
      } else {
        mu = ap::ldexp(mu, 2);
      }
    }
    if (!improved) return nf <= target ? std::optional<Point>(x) : std::nullopt;
  }
  return std::nullopt;
}

// Newton on a univariate polynomial (coefficients lowest first).
std::optional<ap::Complex> polish_univariate(const std::vector<ap::Complex>& c, ap::Complex x, ap::Precision prec) {
  ap::Real tiny = ap::tolerance(prec, 6);
  int settled = 0;
  for (int it = 0; it < 80; ++it) {
    ap::Complex p = c.back(), dp = ap::Complex::zero(prec);
    for (size_t i = c.size() - 1; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    if (p.is_zero()) return x;
    if (dp.is_zero()) return std::nullopt;
    ap::Complex dx = p / dp;
    x -= dx;
    if (ap::abs(dx) <= tiny * std::max(ap::Real(1), ap::abs(x))) {
      if (++settled >= 2) return x;
    }
  }
  return std::nullopt;
}

ap::Real residual_of(const MultiPoly& h, const Point& x) {
  ap::Precision prec = x.empty() ? ap::kDefaultPrecision : x[0].precision();
  return ap::abs(h.eval(with_precision(x, prec + kGuardBits)));
}

bool accept_residual(const MultiPoly& h, const Point& x, ap::Precision prec) {
  double scale = std::max(1.0, eval_scale(h, to_std(x)));
  return residual_of(h, x) < ap::tolerance(prec, 8) * ap::Real(scale);
}

void add_unique(std::vector<Point>& pts, Point p, ap::Precision prec) {
  double tol = std::ldexp(1.0, -static_cast<int>(prec / 2));
  for (const auto& q : pts)
    if (distance(p, q) <= tol * (1 + norm_of(p))) return;
  pts.push_back(std::move(p));
}

// Deterministic ordering: by modulus of the coordinates, then by argument.
void sort_points(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    for (size_t j = a.size(); j-- > 0;) {
      double ma = ap::abs(a[j]).to_double(), mb = ap::abs(b[j]).to_double();
      if (std::abs(ma - mb) > 1e-12 * (1 + ma)) return ma < mb;
    }
    for (size_t j = 0; j < a.size(); ++j) {
      double aa = std::arg(a[j].to_std()), ab = std::arg(b[j].to_std());
      if (std::abs(aa - ab) > 1e-12) return aa < ab;
    }
    return false;
  });
}

std::vector<std::complex<double>> eval_uni_coeffs(const std::vector<std::vector<std::complex<double>>>& c,
                                                  std::complex<double> z) {
  std::vector<std::complex<double>> out;
  for (const auto& poly : c) {
    std::complex<double> acc = 0;
    for (size_t i = poly.size(); i-- > 0;) acc = acc * z + poly[i];
    out.push_back(acc);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Direction

Direction::Direction(const std::vector<mpq_class>& comps) {
  if (comps.empty()) fail(ErrorKind::domain, "empty direction");
  mpz_class l = 1;
  for (const auto& c : comps) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  mpz_class g = 0;
  for (const auto& c : comps) {
    mpq_class scaled = c * l;
    comps_.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), comps_.back().get_mpz_t());
  }
  if (g == 0) fail(ErrorKind::domain, "zero direction");
  for (auto& c : comps_) c /= g;
}

Direction Direction::from_ints(const std::vector<long>& comps) {
  std::vector<mpq_class> q;
  for (long c : comps) q.emplace_back(c);
  return Direction(q);
}

Direction Direction::parse(const std::string& text) {
  std::vector<mpq_class> q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) q.push_back(GaussRat::parse_rational(item));
  if (q.empty()) throw Error(ErrorKind::parse, kModule, "empty direction '" + text + "'");
  return Direction(q);
}

mpq_class Direction::ratio(size_t j, size_t axis) const {
  if (sgn(comps_.at(axis)) == 0) fail(ErrorKind::domain, "direction component on the scale axis is zero");
  return mpq_class(comps_.at(j), comps_.at(axis));
}

Direction Direction::permuted(std::span<const size_t> perm) const {
  std::vector<mpq_class> q;
  for (size_t j : perm) q.emplace_back(comps_.at(j));
  return Direction(q);
}

std::string Direction::to_string() const {
  std::string out;
  for (size_t j = 0; j < comps_.size(); ++j) out += (j ? "," : "") + comps_[j].get_str();
  return out;
}

std::string to_string(Minimality m) {
  switch (m) {
    case Minimality::strict: return "strict";
    case Minimality::finitely_minimal: return "finitely_minimal";
    case Minimality::toral_suspected: return "toral_suspected";
    case Minimality::not_minimal: return "not_minimal";
    case Minimality::unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// System and solvers

std::vector<MultiPoly> critical_system(const RationalGF& gf, const Direction& dir, std::optional<size_t> axis) {
  size_t d = gf.dim();
  if (dir.dim() != d) {
    fail(ErrorKind::domain, "direction has " + std::to_string(dir.dim()) + " components, GF has " +
                                std::to_string(d) + " variables");
  }
  size_t ax = axis.value_or(d - 1);
  const MultiPoly& h = gf.denominator();
  std::vector<MultiPoly> sys{h};
  MultiPoly zd_hd = MultiPoly::variable(h.vars(), ax) * h.partial(ax);
  GaussRat rd(mpq_class(dir.components()[ax]));
  for (size_t j = 0; j < d; ++j) {
    if (j == ax) continue;
    MultiPoly zj_hj = MultiPoly::variable(h.vars(), j) * h.partial(j);
    GaussRat rj(mpq_class(dir.components()[j]));
    sys.push_back(rd * zj_hj - rj * zd_hd);
  }
  return sys;
}

void check_squarefree_2d(const RationalGF& gf) {
  const MultiPoly& h = gf.denominator();
  for (size_t v = 0; v < h.dim(); ++v) {
    if (h.degree_in(v) < 1) {
      fail(ErrorKind::out_of_scope, "denominator does not involve variable '" + h.vars()[v] +
                                        "'; the coefficients are supported on a lower-dimensional face");
    }
  }
  if (h.dim() != 2) return;
  for (size_t v = 0; v < 2; ++v) {
    MultiPoly hv = h.partial(v);
    if (hv.is_zero()) continue;
    if (resultant(as_poly_in(h, v), as_poly_in(hv, v)).is_zero()) {
      fail(ErrorKind::out_of_scope, "pole not simple: out of scope (the denominator has a repeated factor)");
    }
  }
}

std::vector<Point> solve_critical_2d(const RationalGF& gf, const Direction& dir, ap::Precision prec) {
  if (gf.dim() != 2) fail(ErrorKind::domain, "solve_critical_2d needs two variables");
  check_squarefree_2d(gf);
  auto sys_polys = critical_system(gf, dir, 1);
  const MultiPoly& h = sys_polys[0];
  const MultiPoly& e = sys_polys[1];
  if (e.is_zero()) {
    fail(ErrorKind::out_of_scope, "every point of the variety is critical for this direction (non-isolated)");
  }
  UniPoly res = resultant(as_poly_in(h, 1), as_poly_in(e, 1));
  if (res.is_zero()) {
    fail(ErrorKind::out_of_scope, "resultant vanishes identically: the critical set is not isolated");
  }
  UniPoly sf = squarefree_part(res);
  ap::Precision work = prec + kGuardBits;
  System sys = make_system(sys_polys);
  std::vector<Point> out;
  if (sf.degree() < 1) return out;
  auto z_roots = aberth_roots(sf.to_complex(work), work);
  for (const auto& z0 : z_roots) {
    std::vector<ap::Complex> pt{z0, ap::Complex::zero(work)};
    auto wc = h.coefficients_in(1, std::span<const ap::Complex>(pt));
    std::vector<std::complex<double>> wcd;
    for (const auto& c : wc) wcd.push_back(c.to_std());
    for (auto w0 : aberth_roots(wcd)) {
      if (!std::isfinite(std::abs(w0))) continue;
      Point start{z0, ap::Complex(w0, work)};
      // z0 is already accurate (it is a root of the squarefree resultant), so
      // polish w on H(z0, .) first; this also works where the 2x2 Jacobian is
      // singular (degenerate points such as k = 3).
      std::optional<Point> cand;
      if (auto w = polish_univariate(wc, start[1], work)) {
        cand = Point{z0, *w};
      } else {
        cand = newton_polish(sys, start, work);
      }
      if (!cand) continue;
      if (distance(*cand, start) > 1e-4 * (1 + norm_of(start))) continue;
      // Full 2x2 polish when it is well-posed; keep the univariate result otherwise.
      if (auto full = newton_polish(sys, *cand, work); full && distance(*full, *cand) < 1e-20 * (1 + norm_of(*cand))) {
        cand = full;
      }
      Point p = with_precision(*cand, prec);
      if (!accept_residual(h, p, prec)) continue;
      double escale = std::max(1.0, eval_scale(e, to_std(p)));
      if (ap::abs(e.eval(with_precision(*cand, work))) > ap::tolerance(prec, 8) * ap::Real(escale)) continue;
      add_unique(out, std::move(p), prec);
    }
  }
  sort_points(out);
  return out;
}

namespace {

// Smallest positive real root of H(t, ..., t).
std::optional<double> diagonal_seed(const MultiPoly& h) {
  std::vector<GaussRat> c(static_cast<size_t>(std::max(h.total_degree(), 0)) + 1);
  for (const auto& [e, v] : h.terms()) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    c[s] += v;
  }
  UniPoly u(c);
  if (u.degree() < 1) return std::nullopt;
  std::vector<std::complex<double>> cd;
  for (const auto& v : u.coeffs()) cd.emplace_back(v.real().get_d(), v.imag().get_d());
  std::optional<double> best;
  for (auto r : aberth_roots(cd)) {
    if (r.real() > 0 && std::abs(r.imag()) < 1e-9 * (1 + std::abs(r))) {
      if (!best || r.real() < *best) best = r.real();
    }
  }
  return best;
}

// Levenberg-Marquardt in double; returns a point with small residual or nothing.
std::optional<std::vector<std::complex<double>>> lm_double(const System& sys, std::vector<std::complex<double>> x) {
  size_t n = x.size();
  using C = std::complex<double>;
  auto eval_f = [&](const std::vector<C>& p) {
    std::vector<C> f;
    for (const auto& q : sys.f) f.push_back(q.eval(std::span<const C>(p)));
    return f;
  };
  auto fnorm = [](const std::vector<C>& f) {
    double s = 0;
    for (auto v : f) s += std::norm(v);
    return std::sqrt(s);
  };
  std::vector<C> f = eval_f(x);
  double nf = fnorm(f);
  for (int it = 0; it < 200; ++it) {
    double scale = 1 + eval_scale(sys.f[0], x);
    if (nf < 1e-12 * scale) return x;
    Matrix<C> j(n, std::vector<C>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) j[i][k] = sys.jac[i][k].eval(std::span<const C>(x));
    double mu = nf;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      // (J^H J + mu I) dx = -J^H f
      Matrix<C> a(n, std::vector<C>(n, 0.0));
      std::vector<C> b(n, 0.0);
      for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) {
          for (size_t i = 0; i < n; ++i) a[r][c] += std::conj(j[i][r]) * j[i][c];
        }
        a[r][r] += mu;
        for (size_t i = 0; i < n; ++i) b[r] -= std::conj(j[i][r]) * f[i];
      }
      std::vector<C> dx;
      if (!solve_linear(a, b, dx)) return std::nullopt;
      std::vector<C> xn = x;
      for (size_t i = 0; i < n; ++i) xn[i] += dx[i];
      auto fn = eval_f(xn);
      double nn = fnorm(fn);
      if (std::isfinite(nn) && nn < nf) {
        x = std::move(xn);
        f = std::move(fn);
        nf = nn;
        improved = true;
      } else {
        mu *= 4;
      }
    }
    if (!improved) return std::nullopt;
    double size = 0;
    for (auto v : x) size = std::max(size, std::abs(v));
    if (size > 1e8) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Point> solve_critical_nd(const RationalGF& gf, const Direction& dir, const NdSolveOptions& opts) {
  size_t d = gf.dim();
  if (d < 2) fail(ErrorKind::domain, "solve_critical_nd needs at least two variables");
  if (opts.starts < 0) fail(ErrorKind::domain, "negative number of starts");
  System sys = make_system(critical_system(gf, dir));
  ap::Precision work = opts.precision + kGuardBits;
  std::vector<std::vector<std::complex<double>>> starts;
  if (auto t = diagonal_seed(gf.denominator())) starts.emplace_back(d, std::complex<double>(*t, 0.0));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> rad(opts.inner_radius, opts.outer_radius);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int s = 0; s < opts.starts; ++s) {
    std::vector<std::complex<double>> x;
    for (size_t j = 0; j < d; ++j) x.push_back(std::polar(rad(rng), ang(rng)));
    starts.push_back(std::move(x));
  }
  std::vector<Point> out;
  for (const auto& s : starts) {
    auto x = lm_double(sys, s);
    if (!x) continue;
    auto polished = newton_polish(sys, to_ap(*x, work), work);
    if (!polished) polished = lm_polish(sys, to_ap(*x, work), work);
    if (!polished) continue;
    Point p = with_precision(*polished, opts.precision);
    if (!accept_residual(gf.denominator(), p, opts.precision)) continue;
    add_unique(out, std::move(p), opts.precision);
  }
  if (out.empty()) fail(ErrorKind::numerical, "no convergent start");
  sort_points(out);
  return out;
}

// ---------------------------------------------------------------------------
// Pole check and dir

PoleCheck check_simple_pole(const RationalGF& gf, const Point& pt) {
  const MultiPoly& h = gf.denominator();
  if (pt.size() != h.dim()) fail(ErrorKind::domain, "point dimension mismatch");
  ap::Precision prec = pt[0].precision();
  ap::Real eps = eps_zero(prec);
  PoleCheck out;
  ap::Real best = ap::Real::zero(prec);
  for (size_t j = 0; j < h.dim(); ++j) {
    ap::Real m = ap::abs(pt[j] * h.partial(j).eval(pt));
    // ties go to the later axis
    if (m > eps && m >= best * ap::Real(1 - 1e-12)) {
      out.simple = true;
      out.axis = j;
      best = std::max(best, m);
    }
  }
  return out;
}

DirInfo dir_of(const RationalGF& gf, const Point& pt, size_t axis) {
  const MultiPoly& h = gf.denominator();
  if (pt.size() != h.dim() || axis >= h.dim()) fail(ErrorKind::domain, "point dimension mismatch");
  ap::Precision prec = pt[0].precision();
  DirInfo info;
  for (size_t j = 0; j < h.dim(); ++j) info.vector.push_back(pt[j] * h.partial(j).eval(pt));
  if (ap::abs(info.vector[axis]) <= eps_zero(prec)) fail(ErrorKind::numerical, "z_d H_d vanishes on the chosen axis");
  ap::Real tol = ap::tolerance(prec, prec / 4);
  info.worst_imag = ap::Real::zero(prec);
  for (size_t j = 0; j < h.dim(); ++j) {
    ap::Complex r = info.vector[j] / info.vector[axis];
    info.worst_imag = std::max(info.worst_imag, ap::abs(r.imag()));
    if (ap::abs(r.imag()) > tol || r.real() < -tol) info.ratios_real_nonnegative = false;
    info.ratios.push_back(std::move(r));
  }
  return info;
}

// ---------------------------------------------------------------------------
// Minimality

namespace {

double min_root_modulus(const std::vector<std::vector<std::complex<double>>>& coeff_polys, std::complex<double> z,
                        std::complex<double>* which = nullptr) {
  auto c = eval_uni_coeffs(coeff_polys, z);
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  double best = std::numeric_limits<double>::infinity();
  for (auto r : aberth_roots(c)) {
    double m = std::abs(r);
    if (m < best) {
      best = m;
      if (which) *which = r;
    }
  }
  return best;
}

std::vector<std::vector<std::complex<double>>> axis_coefficients(const MultiPoly& h, size_t axis) {
  std::vector<std::vector<std::complex<double>>> out;
  for (const auto& u : as_poly_in(h, axis)) {
    std::vector<std::complex<double>> c;
    for (const auto& v : u.coeffs()) c.emplace_back(v.real().get_d(), v.imag().get_d());
    out.push_back(std::move(c));
  }
  return out;
}

MinimalityResult classify_2d(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis,
                             const MinimalityOptions& opts) {
  const MultiPoly& h = gf.denominator();
  size_t other = 1 - axis;
  ap::Precision prec = pt[0].precision();
  double rho = ap::abs(pt[other]).to_double();
  double sigma = ap::abs(pt[axis]).to_double();
  double phase0 = std::arg(pt[other].to_std());
  MinimalityResult res;
  res.certified = true;
  if (rho == 0 || sigma == 0) {
    res.tag = Minimality::unknown;
    return res;
  }
  auto coeffs = axis_coefficients(h, axis);
  double lower = sigma * (1 - opts.tol);
  int grid = opts.grid;
  auto at_angle = [&](double t, double phi) { return std::polar(t * rho, phase0 + phi); };

  for (int i = 1; i < opts.radial_levels; ++i) {
    double t = static_cast<double>(i) / opts.radial_levels;
    for (int k = 0; k < grid; ++k) {
      double phi = 2 * std::numbers::pi * k / grid;
      if (min_root_modulus(coeffs, at_angle(t, phi)) < lower) {
        res.tag = Minimality::not_minimal;
        return res;
      }
    }
  }

  std::vector<double> m(static_cast<size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    double phi = 2 * std::numbers::pi * k / grid;
    m[k] = min_root_modulus(coeffs, at_angle(1.0, phi));
    if (m[k] < lower) {
      res.tag = Minimality::not_minimal;
      return res;
    }
  }
  // Torus hits on the grid itself: a long run means a curve of V on the torus.
  auto hit = [&](double v) { return std::abs(v - sigma) < opts.tol * sigma; };
  int run = 0, longest = 0;
  for (int k = 0; k < 2 * grid; ++k) {
    run = hit(m[k % grid]) ? run + 1 : 0;
    longest = std::max(longest, std::min(run, grid));
  }
  if (longest >= opts.toral_run) {
    res.tag = Minimality::toral_suspected;
    return res;
  }

  // Refine every local minimum that comes close to the torus.
  System sys = make_system(critical_system(gf, dir, axis));
  std::vector<Point> found;
  const double step = 2 * std::numbers::pi / grid;
  for (int k = 0; k < grid; ++k) {
    double prev = m[(k + grid - 1) % grid], next = m[(k + 1) % grid];
    if (!(m[k] <= prev && m[k] <= next)) continue;
    if (m[k] > sigma * 1.05) continue;
    double a = k * step - step, b = k * step + step;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = min_root_modulus(coeffs, at_angle(1.0, x1)), f2 = min_root_modulus(coeffs, at_angle(1.0, x2));
    while (b - a > 1e-9) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = min_root_modulus(coeffs, at_angle(1.0, x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = min_root_modulus(coeffs, at_angle(1.0, x2));
      }
    }
    double phi = (a + b) / 2;
    std::complex<double> w;
    double mstar = min_root_modulus(coeffs, at_angle(1.0, phi), &w);
    mstar = std::min({mstar, m[k]});
    if (mstar < lower) {
      res.tag = Minimality::not_minimal;
      return res;
    }
    if (!hit(mstar)) continue;
    double wrapped = std::remainder(phi, 2 * std::numbers::pi);
    if (std::abs(wrapped) < 1e-6) continue;  // the point itself
    Point start(2);
    start[other] = ap::Complex(at_angle(1.0, phi), prec + kGuardBits);
    start[axis] = ap::Complex(w, prec + kGuardBits);
    auto polished = newton_polish(sys, start, prec + kGuardBits);
    if (!polished) continue;  // a torus point that is not critical for this direction
    Point p = with_precision(*polished, prec);
    double mo = ap::abs(p[other]).to_double(), ma = ap::abs(p[axis]).to_double();
    if (std::abs(mo - rho) > 1e-8 * rho || std::abs(ma - sigma) > 1e-8 * sigma) continue;
    if (distance(p, pt) < 1e-8 * (1 + norm_of(pt))) continue;
    add_unique(found, std::move(p), prec);
  }
  sort_points(found);
  res.siblings = std::move(found);
  res.tag = res.siblings.empty() ? Minimality::strict : Minimality::finitely_minimal;
  return res;
}

// d >= 3: sample the torus and a few interior polytori at random angles.
MinimalityResult classify_sampled(const RationalGF& gf, const Point& pt, size_t axis, const MinimalityOptions& opts) {
  const MultiPoly& h = gf.denominator();
  size_t d = h.dim();
  MinimalityResult res;
  std::vector<double> mod(d), arg0(d);
  for (size_t j = 0; j < d; ++j) {
    mod[j] = ap::abs(pt[j]).to_double();
    arg0[j] = std::arg(pt[j].to_std());
    if (mod[j] == 0) {
      res.tag = Minimality::unknown;
      return res;
    }
  }
  double sigma = mod[axis];
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi), unit(0.0, 1.0);
  int samples = 4 * opts.grid;
  bool near_hit = false;
  std::vector<std::complex<double>> x(d);
  for (int s = 0; s < samples; ++s) {
    bool torus = s % 2 == 0;
    double t = torus ? 1.0 : unit(rng);
    double dist = 0;
    for (size_t j = 0; j < d; ++j) {
      if (j == axis) continue;
      double phi = ang(rng);
      // bias half of the torus samples towards the point itself
      if (torus && s % 4 == 0) phi *= 0.1;
      dist = std::max(dist, std::abs(phi));
      x[j] = std::polar(t * mod[j], arg0[j] + phi);
    }
    x[axis] = 0.0;
    auto c = h.coefficients_in(axis, std::span<const std::complex<double>>(x));
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    double mmin = std::numeric_limits<double>::infinity();
    for (auto r : aberth_roots(c)) mmin = std::min(mmin, std::abs(r));
    if (mmin < sigma * (1 - opts.tol)) {
      res.tag = Minimality::not_minimal;
      return res;
    }
    if (torus && dist > 0.05 && mmin < sigma * (1 + 1e-6)) near_hit = true;
  }
  res.tag = near_hit ? Minimality::unknown : Minimality::strict;
  return res;
}

}  // namespace

MinimalityResult classify_minimality(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis,
                                     const MinimalityOptions& opts) {
  if (opts.grid < 16) fail(ErrorKind::domain, "minimality grid must have at least 16 samples");
  if (opts.radial_levels < 1) fail(ErrorKind::domain, "need at least one radial level");
  if (pt.size() != gf.dim() || axis >= gf.dim()) fail(ErrorKind::domain, "point dimension mismatch");
  if (gf.dim() == 1) {
    MinimalityResult r;
    r.tag = Minimality::unknown;
    return r;
  }
  if (gf.dim() == 2) return classify_2d(gf, pt, dir, axis, opts);
  return classify_sampled(gf, pt, axis, opts);
}

std::vector<CriticalPoint> find_critical_points(const RationalGF& gf, const Direction& dir,
                                                const SearchOptions& opts) {
  if (dir.dim() != gf.dim()) fail(ErrorKind::domain, "direction dimension does not match the GF");
  std::vector<Point> pts;
  if (gf.dim() == 2) {
    pts = solve_critical_2d(gf, dir, opts.precision);
  } else {
    NdSolveOptions nd = opts.nd;
    nd.precision = opts.precision;
    pts = solve_critical_nd(gf, dir, nd);
  }
  std::vector<CriticalPoint> out;
  for (auto& p : pts) {
    CriticalPoint cp{.coords = p, .direction = dir, .siblings = {}, .residual = {}};
    cp.precision = opts.precision;
    cp.residual = residual_of(gf.denominator(), p);
    PoleCheck pc = check_simple_pole(gf, p);
    cp.pole_simple = pc.simple;
    cp.axis = pc.axis;
    if (pc.simple) {
      MinimalityResult mr = classify_minimality(gf, p, dir, pc.axis, opts.minimality);
      cp.minimality = mr.tag;
      cp.siblings = std::move(mr.siblings);
      cp.certified = mr.certified;
    }
    out.push_back(std::move(cp));
  }
  return out;
}

CriticalPoint contributing_point(const RationalGF& gf, const Direction& dir, const SearchOptions& opts) {
  if (gf.dim() == 2) check_squarefree_2d(gf);
  auto all = find_critical_points(gf, dir, opts);
  std::vector<CriticalPoint> minimal;
  bool toral = false, non_simple = false;
  for (auto& cp : all) {
    if (!cp.pole_simple) {
      // only relevant if no coordinate exceeds the polydisk of a genuine candidate
      non_simple = true;
      continue;
    }
    if (cp.minimality == Minimality::toral_suspected) toral = true;
    if (cp.minimality != Minimality::strict && cp.minimality != Minimality::finitely_minimal) continue;
    if (!dir_of(gf, cp.coords, cp.axis).ratios_real_nonnegative) continue;
    minimal.push_back(std::move(cp));
  }
  if (minimal.empty()) {
    if (toral) fail(ErrorKind::out_of_scope, "toral point suspected: out of scope");
    if (non_simple) fail(ErrorKind::out_of_scope, "pole not simple: out of scope (the gradient of H vanishes)");
    fail(ErrorKind::out_of_scope, "no minimal critical point found for direction " + dir.to_string());
  }
  // Largest exponential rate |z^-r| first; ties keep the deterministic order.
  auto rate = [&](const CriticalPoint& cp) {
    double s = 0;
    for (size_t j = 0; j < cp.coords.size(); ++j)
      s -= dir.components()[j].get_d() * std::log(ap::abs(cp.coords[j]).to_double());
    return s;
  };
  std::stable_sort(minimal.begin(), minimal.end(), [&](const auto& a, const auto& b) {
    double ra = rate(a), rb = rate(b);
    if (std::abs(ra - rb) > 1e-9 * (1 + std::abs(ra))) return ra > rb;
    // prefer a positive real point, then the earlier point
    auto pos = [](const CriticalPoint& c) {
      return std::all_of(c.coords.begin(), c.coords.end(), [](const ap::Complex& x) {
        return x.real().sign() > 0 && std::abs(x.imag().to_double()) < 1e-20;
      });
    };
    return pos(a) && !pos(b);
  });
  return minimal.front();
}

}  // namespace acsv
