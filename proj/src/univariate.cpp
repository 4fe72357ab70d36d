#include "acsv/univariate.hpp"

#include "acsv/error.hpp"

namespace acsv {

namespace {
const char* kModule = "critical-points";
}

UniPoly::UniPoly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::derivative() const {
  std::vector<GaussRat> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * GaussRat(static_cast<long>(i)));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  GaussRat inv = GaussRat(1) / leading();
  std::vector<GaussRat> d = c_;
  for (auto& v : d) v *= inv;
  return UniPoly(std::move(d));
}

GaussRat UniPoly::eval(const GaussRat& x) const {
  GaussRat acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::vector<ap::Complex> UniPoly::to_complex(ap::Precision prec) const {
  std::vector<ap::Complex> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c.to_complex(prec));
  return out;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a) {
  std::vector<GaussRat> c = a.c_;
  for (auto& v : c) v = -v;
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRat> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(c));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += c_[i].to_string();
    if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::domain, kModule, "polynomial division by zero");
  std::vector<GaussRat> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<GaussRat> q(static_cast<size_t>(a.degree() - db) + 1);
  GaussRat inv = GaussRat(1) / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    GaussRat f = r[static_cast<size_t>(i)] * inv;
    if (f.is_zero()) continue;
    q[static_cast<size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.coeffs()[static_cast<size_t>(j)];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorKind::numerical, kModule, "inexact polynomial division in elimination");
  return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();  // keeps coefficient growth in check
  }
  return x.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return exact_quotient(p, g).monic();
}

UniPolyOverUni as_poly_in(const MultiPoly& p, size_t main_var) {
  if (p.dim() != 2) throw Error(ErrorKind::domain, kModule, "bivariate polynomial expected");
  size_t other = 1 - main_var;
  int deg = std::max(p.degree_in(main_var), 0);
  std::vector<std::vector<GaussRat>> raw(static_cast<size_t>(deg) + 1);
  for (const auto& [e, c] : p.terms()) {
    auto& slot = raw[e[main_var]];
    if (slot.size() <= e[other]) slot.resize(e[other] + 1);
    slot[e[other]] += c;
  }
  UniPolyOverUni out;
  for (auto& r : raw) out.emplace_back(std::move(r));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

UniPoly bareiss_determinant(std::vector<std::vector<UniPoly>> m) {
  size_t n = m.size();
  if (n == 0) return UniPoly::constant(GaussRat(1));
  UniPoly prev = UniPoly::constant(GaussRat(1));
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

UniPoly resultant(const UniPolyOverUni& p, const UniPolyOverUni& q) {
  if (p.empty() || q.empty()) return {};
  size_t m = p.size() - 1;  // degree of p in the main variable
  size_t n = q.size() - 1;
  if (m == 0 && n == 0) return UniPoly::constant(GaussRat(1));
  if (m == 0) {
    UniPoly r = UniPoly::constant(GaussRat(1));
    for (size_t i = 0; i < n; ++i) r = r * p[0];
    return r;
  }
  if (n == 0) {
    UniPoly r = UniPoly::constant(GaussRat(1));
    for (size_t i = 0; i < m; ++i) r = r * q[0];
    return r;
  }
  size_t size = m + n;
  std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size));
  for (size_t row = 0; row < n; ++row)
    for (size_t i = 0; i <= m; ++i) s[row][row + i] = p[m - i];
  for (size_t row = 0; row < m; ++row)
    for (size_t i = 0; i <= n; ++i) s[n + row][row + i] = q[n - i];
  return bareiss_determinant(std::move(s));
}

}  // namespace acsv
