#include "acsv/series.hpp"

#include <algorithm>
#include <map>

#include "acsv/error.hpp"

namespace acsv {

namespace {

const char* kModule = "series-oracle";

[[noreturn]] void domain_error(const std::string& msg) { throw Error(ErrorKind::domain, kModule, msg); }

bool negligible(const ap::Complex& c, const ap::Real& eps) { return ap::abs(c) <= eps; }

}  // namespace

ap::Real eps_zero(ap::Precision prec) { return ap::Real::pow2(-static_cast<long>(prec / 2), prec); }

FormalSeries::FormalSeries(std::vector<ap::Complex> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) domain_error("series needs at least one coefficient");
  prec_ = 0;
  for (const auto& c : c_) prec_ = std::max(prec_, c.precision());
  for (auto& c : c_)
    if (c.precision() != prec_) c = c.with_precision(prec_);
}

FormalSeries FormalSeries::zero(int order, ap::Precision prec) {
  if (order < 0) domain_error("negative truncation order");
  return FormalSeries(std::vector<ap::Complex>(static_cast<size_t>(order) + 1, ap::Complex::zero(prec)));
}

FormalSeries FormalSeries::constant(const ap::Complex& c, int order) {
  FormalSeries s = zero(order, c.precision());
  s.c_[0] = c;
  return s;
}

FormalSeries FormalSeries::x(int order, ap::Precision prec) {
  FormalSeries s = zero(order, prec);
  if (order >= 1) s.c_[1] = ap::Complex(ap::Real(1.0, prec));
  return s;
}

FormalSeries FormalSeries::truncated(int order) const {
  if (order > this->order()) domain_error("cannot extend a truncated series");
  if (order < 0) domain_error("negative truncation order");
  return FormalSeries(std::vector<ap::Complex>(c_.begin(), c_.begin() + order + 1));
}

int FormalSeries::valuation(const ap::Real& eps) const {
  for (size_t j = 0; j < c_.size(); ++j)
    if (!negligible(c_[j], eps)) return static_cast<int>(j);
  return -1;
}

ap::Complex FormalSeries::eval(const ap::Complex& x) const {
  ap::Complex acc = c_.back();
  for (size_t j = c_.size() - 1; j-- > 0;) acc = acc * x + c_[j];
  return acc;
}

FormalSeries FormalSeries::derivative() const {
  if (order() == 0) return zero(0, prec_);
  std::vector<ap::Complex> d;
  for (size_t j = 1; j < c_.size(); ++j) d.push_back(c_[j] * ap::Complex(static_cast<long>(j)));
  return FormalSeries(std::move(d));
}

FormalSeries FormalSeries::integral() const {
  std::vector<ap::Complex> d{ap::Complex::zero(prec_)};
  for (size_t j = 0; j < c_.size(); ++j) d.push_back(c_[j] / ap::Complex(static_cast<long>(j + 1)));
  return FormalSeries(std::move(d));
}

FormalSeries FormalSeries::shift_down(int n) const {
  if (n > order()) domain_error("shift exceeds truncation order");
  return FormalSeries(std::vector<ap::Complex>(c_.begin() + n, c_.end()));
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  int n = std::min(a.order(), b.order());
  std::vector<ap::Complex> c;
  for (int j = 0; j <= n; ++j) c.push_back(a.c_[j] + b.c_[j]);
  return FormalSeries(std::move(c));
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
  int n = std::min(a.order(), b.order());
  std::vector<ap::Complex> c;
  for (int j = 0; j <= n; ++j) c.push_back(a.c_[j] - b.c_[j]);
  return FormalSeries(std::move(c));
}

FormalSeries operator-(const FormalSeries& a) {
  std::vector<ap::Complex> c;
  for (const auto& v : a.c_) c.push_back(-v);
  return FormalSeries(std::move(c));
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  // A factor that vanishes to order v lets the product know v more terms of
  // the other factor, but tracking that is not worth it here.
  int n = std::min(a.order(), b.order());
  ap::Precision prec = std::max(a.prec_, b.prec_);
  std::vector<ap::Complex> c(static_cast<size_t>(n) + 1, ap::Complex::zero(prec));
  for (int i = 0; i <= n; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return FormalSeries(std::move(c));
}

FormalSeries operator*(const FormalSeries& a, const ap::Complex& s) {
  std::vector<ap::Complex> c;
  for (const auto& v : a.c_) c.push_back(v * s);
  return FormalSeries(std::move(c));
}

FormalSeries operator+(const FormalSeries& a, const ap::Complex& s) {
  FormalSeries r = a;
  r.c_[0] += s;
  return r;
}

FormalSeries ps_reciprocal(const FormalSeries& s) {
  if (s[0].is_zero()) domain_error("reciprocal of a series with zero constant term");
  int n = s.order();
  std::vector<ap::Complex> r(static_cast<size_t>(n) + 1, ap::Complex::zero(s.precision()));
  ap::Complex inv = ap::Complex(ap::Real(1.0, s.precision())) / s[0];
  r[0] = inv;
  for (int j = 1; j <= n; ++j) {
    ap::Complex acc = ap::Complex::zero(s.precision());
    for (int i = 1; i <= j; ++i) acc += s[i] * r[j - i];
    r[j] = -acc * inv;
  }
  return FormalSeries(std::move(r));
}

FormalSeries ps_div(const FormalSeries& a, const FormalSeries& b) { return a * ps_reciprocal(b); }

FormalSeries ps_exp(const FormalSeries& s) {
  // e' = s' e, solved coefficient by coefficient.
  int n = s.order();
  ap::Precision prec = s.precision();
  std::vector<ap::Complex> e(static_cast<size_t>(n) + 1, ap::Complex::zero(prec));
  e[0] = ap::exp(s[0]);
  for (int j = 1; j <= n; ++j) {
    ap::Complex acc = ap::Complex::zero(prec);
    for (int i = 1; i <= j; ++i) acc += ap::Complex(static_cast<long>(i)) * s[i] * e[j - i];
    e[j] = acc / ap::Complex(static_cast<long>(j));
  }
  return FormalSeries(std::move(e));
}

FormalSeries ps_log1p(const FormalSeries& s) {
  if (!negligible(s[0], eps_zero(s.precision()))) domain_error("log1p needs a series with zero constant term");
  FormalSeries one_plus = s;
  one_plus[0] = ap::Complex(ap::Real(1.0, s.precision()));
  // log(1+s) = integral of s' / (1+s).
  if (s.order() == 0) return FormalSeries::zero(0, s.precision());
  FormalSeries d = s.derivative() * ps_reciprocal(one_plus.truncated(s.order() - 1));
  return d.integral();
}

FormalSeries ps_pow(const FormalSeries& s, unsigned n) {
  FormalSeries result = FormalSeries::constant(ap::Complex(ap::Real(1.0, s.precision())), s.order());
  FormalSeries base = s;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

FormalSeries ps_kth_root(const FormalSeries& s, int k) {
  if (k < 1) domain_error("root index must be positive");
  ap::Real eps = eps_zero(s.precision());
  int v = s.valuation(eps);
  if (v != k) {
    domain_error("series vanishes to order " + std::to_string(v) + ", expected exactly " + std::to_string(k));
  }
  // y = c^{1/k} x (1 + u)^{1/k}, u = s/(c x^k) - 1.
  FormalSeries t = s.shift_down(k);
  ap::Complex c = t[0];
  FormalSeries u = t * (ap::Complex(ap::Real(1.0, s.precision())) / c);
  u[0] = ap::Complex::zero(s.precision());
  FormalSeries root = ps_exp(ps_log1p(u) * ap::Complex(ap::Real(1.0, s.precision()) / ap::Real(static_cast<long>(k))));
  ap::Complex lead = ap::pow(c, ap::Real(1.0, s.precision()) / ap::Real(static_cast<long>(k)));
  std::vector<ap::Complex> y{ap::Complex::zero(s.precision())};
  for (const auto& v2 : root.coeffs()) y.push_back(v2 * lead);
  return FormalSeries(std::move(y));
}

FormalSeries ps_compose(const FormalSeries& outer, const FormalSeries& inner) {
  if (!negligible(inner[0], eps_zero(inner.precision()))) {
    domain_error("composition needs an inner series with zero constant term");
  }
  FormalSeries in = inner;
  in[0] = ap::Complex::zero(inner.precision());
  int n = std::min(outer.order(), inner.order());
  ap::Precision prec = std::max(outer.precision(), inner.precision());
  FormalSeries acc = FormalSeries::constant(outer[static_cast<size_t>(n)].with_precision(prec), n);
  in = in.truncated(n);
  for (int j = n - 1; j >= 0; --j) acc = acc * in + outer[static_cast<size_t>(j)];
  return acc;
}

FormalSeries ps_revert(const FormalSeries& y) {
  ap::Real eps = eps_zero(y.precision());
  if (!negligible(y[0], eps)) domain_error("reversion needs zero constant term");
  if (y.order() < 1 || negligible(y[1], eps)) domain_error("reversion needs a nonzero linear coefficient");
  int n = y.order();
  ap::Precision prec = y.precision();
  // Newton: eta <- eta - (y(eta) - x) / y'(eta); each step doubles the number
  // of correct coefficients.
  FormalSeries x = FormalSeries::x(n, prec);
  FormalSeries eta = x * (ap::Complex(ap::Real(1.0, prec)) / y[1]);
  FormalSeries dy = y.derivative();
  for (int have = 2; have < 2 * (n + 1); have *= 2) {
    FormalSeries num = ps_compose(y, eta) - x;
    // y' has order n-1; pad so the quotient keeps order n (the numerator
    // already vanishes to order `have`, so the padding is never read).
    std::vector<ap::Complex> dpad = dy.coeffs();
    dpad.push_back(ap::Complex::zero(prec));
    FormalSeries den = ps_compose(FormalSeries(dpad), eta);
    eta = eta - ps_div(num, den);
  }
  return eta;
}

FormalSeries poly_eval_series(const MultiPoly& p, std::span<const FormalSeries> args) {
  if (args.size() != p.dim()) domain_error("argument count does not match variable count");
  if (args.empty()) domain_error("no series arguments");
  int n = args[0].order();
  ap::Precision prec = args[0].precision();
  for (const auto& a : args) {
    n = std::min(n, a.order());
    prec = std::max(prec, a.precision());
  }
  std::vector<std::vector<FormalSeries>> powers(args.size());
  for (size_t j = 0; j < args.size(); ++j) {
    int deg = std::max(p.degree_in(j), 0);
    powers[j].push_back(FormalSeries::constant(ap::Complex(ap::Real(1.0, prec)), n));
    FormalSeries base = args[j].truncated(n);
    for (int e = 1; e <= deg; ++e) powers[j].push_back(powers[j].back() * base);
  }
  FormalSeries acc = FormalSeries::zero(n, prec);
  for (const auto& [e, c] : p.terms()) {
    FormalSeries t = FormalSeries::constant(c.to_complex(prec), n);
    for (size_t j = 0; j < args.size(); ++j)
      if (e[j] > 0) t = t * powers[j][e[j]];
    acc = acc + t;
  }
  return acc;
}

}  // namespace acsv
