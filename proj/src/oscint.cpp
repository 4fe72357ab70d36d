#include "acsv/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "acsv/asymptotics.hpp"
#include "acsv/error.hpp"
#include "acsv/roots.hpp"

namespace acsv {

namespace {

const char* kModule = "oscint-oracle";

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

constexpr int kNodes = 20;

struct Rule {
  std::vector<ap::Real> x, w;  // on [-1, 1]
};

// Gauss-Legendre nodes by Newton on P_n, cached per precision.
const Rule& legendre_rule(ap::Precision prec) {
  static std::mutex mu;
  static std::map<ap::Precision, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(prec);
  if (it != cache.end()) return it->second;
  ap::Precision work = prec + 32;
  Rule r;
  const int n = kNodes;
  ap::Real one(1.0, work), two(2.0, work);
  for (int i = 1; i <= n; ++i) {
    ap::Real x(std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5)), work);
    ap::Real dp = ap::Real::zero(work);
    for (int it = 0; it < 100; ++it) {
      ap::Real p0 = one, p1 = x;
      for (int k = 2; k <= n; ++k) {
        ap::Real p2 = (ap::Real(2L * k - 1) * x * p1 - ap::Real(long(k - 1)) * p0) / ap::Real(long(k));
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = ap::Real(long(n)) * (x * p1 - p0) / (x * x - one);
      ap::Real dx = p1 / dp;
      x -= dx;
      if (ap::abs(dx) < ap::tolerance(work, 4)) break;
    }
    r.x.push_back(x.with_precision(prec));
    r.w.push_back((two / ((one - x * x) * dp * dp)).with_precision(prec));
  }
  return cache.emplace(prec, std::move(r)).first->second;
}

struct PanelSum {
  ap::Complex value;
  ap::Real l1;
};

PanelSum gauss_panel(const std::function<ap::Complex(const ap::Real&)>& f, const ap::Real& a, const ap::Real& b,
                     const Rule& rule, ap::Precision prec) {
  ap::Real half = ap::ldexp(b - a, -1), mid = ap::ldexp(a + b, -1);
  PanelSum s{ap::Complex::zero(prec), ap::Real::zero(prec)};
  for (size_t i = 0; i < rule.x.size(); ++i) {
    ap::Complex v = f(mid + half * rule.x[i]);
    s.value += ap::Complex(rule.w[i]) * v;
    s.l1 += rule.w[i] * ap::abs(v);
  }
  s.value = s.value * ap::Complex(half);
  s.l1 = s.l1 * ap::abs(half);
  return s;
}

// Smooth step: 1 on (-inf, 0], 0 on [1, inf), C-infinity in between.
ap::Real smooth_step(const ap::Real& t) {
  ap::Precision prec = t.precision();
  if (t.sign() <= 0) return ap::Real(1.0, prec);
  ap::Real one(1.0, prec);
  if (t >= one) return ap::Real::zero(prec);
  ap::Real a = ap::exp(-one / (one - t)), b = ap::exp(-one / t);
  return a / (a + b);
}

}  // namespace

ap::Complex adaptive_integral(const std::function<ap::Complex(const ap::Real&)>& f, const ap::Real& a,
                              const ap::Real& b, int panels, double tolerance, int max_depth,
                              ap::Precision prec) {
  if (panels < 1) fail(ErrorKind::domain, "at least one panel is required");
  const Rule& rule = legendre_rule(prec);
  struct Item {
    ap::Real a, b;
    PanelSum whole;
    int depth;
  };
  std::vector<Item> work;
  ap::Real width = (b - a) / ap::Real(long(panels));
  ap::Real l1 = ap::Real::zero(prec);
  for (int i = 0; i < panels; ++i) {
    ap::Real pa = a + width * ap::Real(long(i));
    ap::Real pb = i + 1 == panels ? b : a + width * ap::Real(long(i + 1));
    PanelSum s = gauss_panel(f, pa, pb, rule, prec);
    l1 += s.l1;
    work.push_back({pa, pb, s, 0});
  }
  ap::Real abs_tol = ap::Real(tolerance, prec) * l1;
  ap::Complex total = ap::Complex::zero(prec);
  // Depth-first, left to right: a fixed summation order keeps results reproducible.
  std::reverse(work.begin(), work.end());
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    ap::Real mid = ap::ldexp(it.a + it.b, -1);
    PanelSum left = gauss_panel(f, it.a, mid, rule, prec);
    PanelSum right = gauss_panel(f, mid, it.b, rule, prec);
    ap::Complex refined = left.value + right.value;
    ap::Real share = abs_tol * (it.b - it.a) / (b - a);
    if (ap::abs(refined - it.whole.value) <= std::max(share, ap::tolerance(prec, 8) * it.whole.l1)) {
      total += refined;
      continue;
    }
    if (it.depth >= max_depth) fail(ErrorKind::numerical, "quadrature did not converge within the refinement budget");
    work.push_back({mid, it.b, right, it.depth + 1});
    work.push_back({it.a, mid, left, it.depth + 1});
  }
  return total;
}

namespace {

// Tracks w = g(z e^{i theta}) on a uniform grid and answers point queries by
// Newton from the nearest grid value.
class Branch {
 public:
  Branch(const MultiPoly& h, const Point& z, double halfwidth, double branch_tol) : h_(h), z_(z) {
    prec_ = z[0].precision();
    steps_ = 256;
    step_ = halfwidth / steps_;
    std::vector<std::complex<double>> zd{z[0].to_std(), z[1].to_std()};
    w_.assign(2 * steps_ + 1, {});
    gap_.assign(2 * steps_ + 1, 0);
    w_[steps_] = zd[1];
    gap_[steps_] = track_gap(zd[0], zd[1], branch_tol, nullptr);
    for (int dirn : {1, -1}) {
      std::complex<double> prev = zd[1], prev2 = zd[1];
      for (int j = 1; j <= steps_; ++j) {
        int idx = steps_ + dirn * j;
        std::complex<double> zz = zd[0] * std::polar(1.0, dirn * j * step_);
        std::complex<double> guess = j >= 2 ? 2.0 * prev - prev2 : prev;
        std::complex<double> w;
        gap_[idx] = track_gap(zz, guess, branch_tol, &w);
        prev2 = prev;
        prev = w;
        w_[idx] = w;
      }
    }
  }

  ap::Complex at(const ap::Real& theta) const {
    double t = theta.to_double() / step_ + steps_;
    int idx = std::clamp(static_cast<int>(std::lround(t)), 0, 2 * steps_);
    ap::Complex zz = z_[0] * ap::expi(theta);
    ap::Complex w(w_[idx], prec_);
    ap::Complex start = w;
    Point p{zz, w};
    MultiPoly hw = h_.partial(1);
    for (int it = 0; it < 60; ++it) {
      p[1] = w;
      ap::Complex dw = h_.eval(p) / hw.eval(p);
      w -= dw;
      if (ap::abs(dw) <= ap::tolerance(prec_, 4) * (ap::Real(1.0, prec_) + ap::abs(w))) break;
    }
    if (ap::abs(w - start).to_double() > 0.25 * gap_[idx] + 4 * step_ * (1 + std::abs(w_[idx]))) {
      fail(ErrorKind::numerical, "branch tracking: Newton left the tracked sheet of V");
    }
    return w;
  }

 private:
  // Distance from the chosen root to the nearest other root of H(zz, .).
  double track_gap(std::complex<double> zz, std::complex<double> guess, double tol, std::complex<double>* chosen) {
    std::vector<std::complex<double>> pt{zz, 0.0};
    auto roots = aberth_roots(h_.coefficients_in(1, std::span<const std::complex<double>>(pt)));
    if (roots.empty()) fail(ErrorKind::numerical, "branch tracking: H(z, .) has no roots");
    size_t best = 0;
    for (size_t i = 1; i < roots.size(); ++i)
      if (std::abs(roots[i] - guess) < std::abs(roots[best] - guess)) best = i;
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < roots.size(); ++i)
      if (i != best) gap = std::min(gap, std::abs(roots[i] - roots[best]));
    double scale = 1 + std::abs(roots[best]);
    if (gap < 10 * tol * scale) fail(ErrorKind::numerical, "branch tracking: two roots of H(z, .) collide");
    if (chosen && std::abs(roots[best] - guess) > 0.5 * gap) {
      fail(ErrorKind::numerical, "branch tracking: step too large to follow the branch unambiguously");
    }
    if (chosen) *chosen = roots[best];
    return gap;
  }

  const MultiPoly& h_;
  Point z_;
  ap::Precision prec_;
  int steps_;
  double step_;
  std::vector<std::complex<double>> w_;
  std::vector<double> gap_;
};

ap::Complex xi_2d(const Frame& fr, std::span<const long> r, const QuadratureSpec& spec) {
  ap::Precision prec = fr.z[0].precision();
  const MultiPoly& h = fr.gf.denominator();
  const MultiPoly& g = fr.gf.numerator();
  MultiPoly hw = h.partial(1);
  Branch branch(h, fr.z, spec.halfwidth, spec.branch_tolerance);
  long rz = r[0], s = r[1];
  const ap::Complex& w0 = fr.z[1];
  auto integrand = [&](const ap::Real& theta) {
    ap::Complex w = branch.at(theta);
    Point p{fr.z[0] * ap::expi(theta), w};
    ap::Complex psi = g.eval(p) / (-(w * hw.eval(p)));
    return ap::pow(w0 / w, s) * ap::expi(-ap::Real(rz) * theta) * psi;
  };
  ap::Real hwidth(spec.halfwidth, prec);
  ap::Complex v = adaptive_integral(integrand, -hwidth, hwidth, spec.panels, spec.tolerance, spec.max_refinements, prec);
  return v / ap::Complex(ap::ldexp(ap::Real::pi(prec), 1));
}

// Product rule over the (d-1)-cube; each node continues the branch along the
// segment from 0 in a few Newton steps.
ap::Complex xi_nd(const Frame& fr, std::span<const long> r, const QuadratureSpec& spec) {
  ap::Precision prec = fr.z[0].precision();
  size_t d = fr.z.size(), n = d - 1;
  const MultiPoly& h = fr.gf.denominator();
  MultiPoly hw = h.partial(d - 1);
  const Rule& rule = legendre_rule(prec);
  std::vector<std::complex<double>> zd;
  for (const auto& c : fr.z) zd.push_back(c.to_std());
  auto eval_at = [&](const std::vector<ap::Real>& theta) {
    // Continue in double along the segment, then polish once at full precision.
    std::vector<std::complex<double>> q = zd;
    std::complex<double> wd = zd[n];
    const int sub = 8;
    for (int step = 1; step <= sub; ++step) {
      double t = static_cast<double>(step) / sub;
      for (size_t j = 0; j < n; ++j) q[j] = zd[j] * std::polar(1.0, theta[j].to_double() * t);
      for (int it = 0; it < 30; ++it) {
        q[n] = wd;
        std::complex<double> dw = h.eval(std::span<const std::complex<double>>(q)) /
                                  hw.eval(std::span<const std::complex<double>>(q));
        wd -= dw;
        if (std::abs(dw) <= 1e-15 * (1 + std::abs(wd))) break;
      }
    }
    Point p(d);
    for (size_t j = 0; j < n; ++j) p[j] = fr.z[j] * ap::expi(theta[j]);
    ap::Complex w(wd, prec);
    for (int it = 0; it < 8; ++it) {
      p[n] = w;
      ap::Complex dw = h.eval(p) / hw.eval(p);
      w -= dw;
      if (ap::abs(dw) <= ap::tolerance(prec, 4) * (ap::Real(1.0, prec) + ap::abs(w))) break;
    }
    if (std::abs(w.to_std() - wd) > 1e-6 * (1 + std::abs(wd))) {
      fail(ErrorKind::numerical, "branch tracking: polish left the continued branch");
    }
    p[n] = w;
    ap::Complex psi = fr.gf.numerator().eval(p) / (-(w * hw.eval(p)));
    ap::Real phase = ap::Real::zero(prec);
    for (size_t j = 0; j < n; ++j) phase += ap::Real(r[j]) * theta[j];
    return ap::pow(fr.z[n] / w, r[n]) * ap::expi(-phase) * psi;
  };
  auto product_rule = [&](int panels) {
    // one-dimensional composite nodes and weights
    std::vector<ap::Real> xs, ws;
    ap::Real hwidth(spec.halfwidth, prec);
    ap::Real width = ap::ldexp(hwidth, 1) / ap::Real(long(panels));
    for (int p = 0; p < panels; ++p) {
      ap::Real mid = -hwidth + width * (ap::Real(long(p)) + ap::Real(0.5));
      for (size_t i = 0; i < rule.x.size(); ++i) {
        xs.push_back(mid + ap::ldexp(width, -1) * rule.x[i]);
        ws.push_back(ap::ldexp(width, -1) * rule.w[i]);
      }
    }
    size_t m = xs.size();
    std::vector<size_t> idx(n, 0);
    ap::Complex total = ap::Complex::zero(prec);
    while (true) {
      std::vector<ap::Real> theta;
      ap::Real weight(1.0, prec);
      for (size_t j = 0; j < n; ++j) {
        theta.push_back(xs[idx[j]]);
        weight *= ws[idx[j]];
      }
      total += ap::Complex(weight) * eval_at(theta);
      size_t j = 0;
      while (j < n && ++idx[j] == m) idx[j++] = 0;
      if (j == n) break;
    }
    return total;
  };
  // Non-adaptive in d >= 3: double the panels until two rules agree to
  // 1e-12 (tighter requests are capped there to bound the node count).
  int panels = 1;
  ap::Complex prev = product_rule(panels);
  for (int ref = 0;; ++ref) {
    panels *= 2;
    ap::Complex next = product_rule(panels);
    bool done = ap::abs(next - prev) <= ap::Real(std::max(spec.tolerance, 1e-12), prec) * ap::abs(next);
    prev = next;
    if (done) break;
    if (ref == 3) fail(ErrorKind::numerical, "product-grid quadrature did not converge");
  }
  ap::Complex norm = ap::pow(ap::Complex(ap::ldexp(ap::Real::pi(prec), 1)), -static_cast<long>(n));
  return prev * norm;
}

}  // namespace

ap::Complex xi_quadrature(const RationalGF& gf, const CriticalPoint& pt, std::span<const long> r,
                          const QuadratureSpec& spec) {
  size_t d = gf.dim();
  if (r.size() != d) fail(ErrorKind::domain, "index dimension mismatch");
  if (!(spec.halfwidth > 0 && spec.halfwidth <= std::numbers::pi)) fail(ErrorKind::domain, "halfwidth must lie in (0, pi]");
  if (spec.panels < 8) fail(ErrorKind::domain, "at least 8 panels are required");
  if (!pt.pole_simple) fail(ErrorKind::out_of_scope, "pole not simple: out of scope");
  if (r[pt.axis] < 1) fail(ErrorKind::domain, "index on the scale axis must be at least 1");
  for (long v : r)
    if (v < 0) fail(ErrorKind::domain, "indices must be nonnegative");
  Frame fr = make_frame(gf, pt.coords, pt.direction, pt.axis);
  std::vector<long> rr;
  for (size_t j : fr.perm) rr.push_back(r[j]);
  return d == 2 ? xi_2d(fr, rr, spec) : xi_nd(fr, rr, spec);
}

ap::Complex model_integral(int k, const FormalSeries& amplitude, const ap::Complex& ck, double lambda,
                           bool two_sided, double tolerance) {
  if (k < 1) fail(ErrorKind::domain, "k must be positive");
  if (!(lambda > 0)) fail(ErrorKind::domain, "lambda must be positive");
  ap::Precision prec = std::max(ck.precision(), amplitude.precision());
  double re = ck.real().to_double();
  if (re < 0) fail(ErrorKind::domain, "Re c_k < 0: the integral diverges");
  if (ck.is_zero()) fail(ErrorKind::domain, "c_k = 0: the integral diverges");
  if (two_sided && k % 2 == 1 && ap::abs(ck.real()) > eps_zero(prec)) {
    fail(ErrorKind::domain, "k odd two-sided needs a purely imaginary c_k");
  }
  double mag = ap::abs(ck).to_double();
  // Decaying case: cut where exp(-lambda Re(c) x^k) is below the tolerance.
  double cut = re > 0 ? std::pow(std::log(1 / tolerance) / (lambda * re), 1.0 / k) : INFINITY;
  // Oscillatory case: window on [B/2, B] with lambda |c| (B/2)^k >= 1000 so
  // the window's contribution is exponentially small.
  double window = std::max(1.0, 2 * std::pow(1000.0 / (lambda * mag), 1.0 / k));
  bool windowed = !(cut <= window);
  double end = windowed ? window : cut;
  ap::Real lam(lambda, prec);
  ap::Real half_end(end / 2, prec);
  auto integrand = [&](const ap::Real& x) {
    ap::Complex v = ap::exp(-(ap::Complex(lam * ap::pow(x, ap::Real(long(k)))) * ck)) * amplitude.eval(ap::Complex(x));
    if (windowed) v = v * ap::Complex(smooth_step((ap::abs(x) - half_end) / half_end));
    return v;
  };
  // Initial panels: about one per oscillation; adaptive bisection refines further.
  double cycles = lambda * mag * std::pow(end, k) / (2 * std::numbers::pi);
  int panels = static_cast<int>(std::clamp(cycles, 8.0, 100000.0));
  ap::Real a = two_sided ? ap::Real(-end, prec) : ap::Real::zero(prec);
  if (two_sided) panels *= 2;
  return adaptive_integral(integrand, a, ap::Real(end, prec), panels, tolerance, 30, prec);
}

ap::Complex model_integral(int k, int l, const ap::Complex& ck, double lambda, bool two_sided, double tolerance) {
  if (l < 0) fail(ErrorKind::domain, "l must be nonnegative");
  ap::Precision prec = std::max<ap::Precision>(ck.precision(), ap::kDefaultPrecision);
  std::vector<ap::Complex> c(static_cast<size_t>(l) + 1, ap::Complex::zero(prec));
  c[static_cast<size_t>(l)] = ap::Complex(ap::Real(1.0, prec));
  return model_integral(k, FormalSeries(c), ck, lambda, two_sided, tolerance);
}

ap::Complex model_expansion(int k, const FormalSeries& amplitude, const ap::Complex& ck, double lambda,
                            bool two_sided, int count) {
  ap::Precision prec = std::max(ck.precision(), amplitude.precision());
  std::vector<ap::Complex> ph(static_cast<size_t>(count + k), ap::Complex::zero(prec));
  ph[static_cast<size_t>(k)] = ck;
  std::vector<ap::Complex> amp(static_cast<size_t>(count), ap::Complex::zero(prec));
  for (int j = 0; j < count && j <= amplitude.order(); ++j) amp[static_cast<size_t>(j)] = amplitude[static_cast<size_t>(j)];
  auto b = bstar_coefficients(FormalSeries(ph), FormalSeries(amp), k, count);
  ap::Complex sum = ap::Complex::zero(prec);
  ap::Real lam(lambda, prec);
  for (int j = 0; j < count; ++j) {
    GammaConstants g = two_sided ? gamma_constants(k, j, ck) : GammaConstants{};
    ap::Complex a = two_sided ? g.a_cal
                              : ap::Complex(ap::tgamma(ap::Real(mpq_class(j + 1, k), prec)) / ap::Real(long(k)));
    sum += a * b[static_cast<size_t>(j)] * ap::Complex(ap::pow(lam, ap::Real(mpq_class(-(j + 1), k), prec)));
  }
  return sum;
}

}  // namespace acsv
