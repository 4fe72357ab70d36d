#include "acsv/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "acsv/error.hpp"

namespace acsv {

namespace {

const char* kModule = "polynomial-core";

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::parse, kModule, msg); }

const char* kLaurentHint =
    "negative exponents are not supported; multiply numerator and denominator by the monomial "
    "that clears every negative power (z^a w^b ...) and shift the coefficient index by (a, b, ...)";

bool valid_rational_text(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (digits == 0) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  return digits > 0 && i == s.size();
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// GaussRat

mpq_class GaussRat::parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (!valid_rational_text(s)) parse_error("malformed rational '" + text + "' (expected p or p/q)");
  if (s[0] == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) parse_error("malformed rational '" + text + "'");
  if (sgn(q.get_den()) == 0) parse_error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  if (b.is_zero()) throw Error(ErrorKind::domain, kModule, "division by zero");
  if (b.is_real()) return {a.re_ / b.re_, a.im_ / b.re_};
  mpq_class d = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
}

std::string GaussRat::to_string() const {
  if (is_real()) return rational_text(re_);
  std::string out = "(";
  if (sgn(re_) != 0) out += rational_text(re_);
  if (sgn(re_) != 0 && sgn(im_) > 0) out += "+";
  if (im_ == -1) {
    out += "-I";
  } else if (im_ == 1) {
    out += "I";
  } else {
    out += rational_text(im_) + "*I";
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const GaussRat& c) {
  MultiPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_[Exponents(p.dim(), 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.dim()) throw Error(ErrorKind::domain, kModule, "variable index out of range");
  Exponents e(p.dim(), 0);
  e[index] = 1;
  p.terms_[e] = GaussRat(1);
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> vars,
                                const std::vector<std::pair<Exponents, GaussRat>>& terms) {
  MultiPoly p(std::move(vars));
  for (const auto& [e, c] : terms) {
    if (e.size() != p.dim()) {
      parse_error("exponent vector of length " + std::to_string(e.size()) + " does not match " +
                  std::to_string(p.dim()) + " variables");
    }
    p.terms_[e] += c;
  }
  std::erase_if(p.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return p;
}

bool MultiPoly::has_real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

GaussRat MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussRat() : it->second;
}

GaussRat MultiPoly::constant_term() const { return coefficient(Exponents(dim(), 0)); }

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (unsigned x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
  return d;
}

void MultiPoly::check_same_vars(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw Error(ErrorKind::domain, kModule, "polynomials over different variable lists");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same_vars(o);
  for (const auto& [e, c] : o.terms_) {
    auto& slot = terms_[e];
    slot += c;
    if (slot.is_zero()) terms_.erase(e);
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same_vars(o);
  for (const auto& [e, c] : o.terms_) {
    auto& slot = terms_[e];
    slot -= c;
    if (slot.is_zero()) terms_.erase(e);
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly r = a;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_vars(b);
  MultiPoly r(a.vars_);
  Exponents e(a.dim());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      r.terms_[e] += ca * cb;
    }
  }
  std::erase_if(r.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(vars_, GaussRat(1));
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::partial(size_t var) const {
  if (var >= dim()) {
    throw Error(ErrorKind::domain, kModule,
                "partial derivative index " + std::to_string(var) + " out of range for " +
                    std::to_string(dim()) + " variables");
  }
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    r.terms_[f] = c * GaussRat(static_cast<long>(e[var]));
  }
  return r;
}

MultiPoly MultiPoly::permuted(std::span<const size_t> perm) const {
  if (perm.size() != dim()) throw Error(ErrorKind::domain, kModule, "permutation length mismatch");
  std::vector<std::string> v(dim());
  for (size_t j = 0; j < dim(); ++j) v[j] = vars_.at(perm[j]);
  MultiPoly r(std::move(v));
  for (const auto& [e, c] : terms_) {
    Exponents f(dim());
    for (size_t j = 0; j < dim(); ++j) f[j] = e[perm[j]];
    r.terms_[f] = c;
  }
  return r;
}

namespace {

// Recursive Horner over a lexicographically sorted run of terms that agree in
// the exponents of variables before `var`.
template <class Scalar, class Coef, class Pow>
Scalar horner(std::vector<std::pair<const Exponents*, const GaussRat*>>::const_iterator begin,
              std::vector<std::pair<const Exponents*, const GaussRat*>>::const_iterator end, size_t var,
              std::span<const Scalar> point, const Coef& coef, const Pow& power, const Scalar& zero) {
  if (var == point.size()) return coef(*begin->second);
  Scalar acc = zero;
  unsigned prev = 0;
  bool first = true;
  // Groups ascend in the exponent of `var`; walk them from the top.
  auto group_end = end;
  while (group_end != begin) {
    unsigned e = (*(group_end - 1)->first)[var];
    auto group_begin = group_end - 1;
    while (group_begin != begin && (*(group_begin - 1)->first)[var] == e) --group_begin;
    Scalar inner = horner<Scalar>(group_begin, group_end, var + 1, point, coef, power, zero);
    if (first) {
      acc = inner;
      first = false;
    } else {
      acc = acc * power(point[var], prev - e) + inner;
    }
    prev = e;
    group_end = group_begin;
  }
  if (prev > 0) acc = acc * power(point[var], prev);
  return acc;
}

}  // namespace

ap::Complex MultiPoly::eval(std::span<const ap::Complex> point) const {
  if (point.size() != dim()) {
    throw Error(ErrorKind::domain, kModule,
                "point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                    std::to_string(dim()) + " variables");
  }
  ap::Precision prec = point.empty() ? ap::kDefaultPrecision : point[0].precision();
  for (const auto& x : point) prec = std::min(prec, x.precision());
  if (terms_.empty()) return ap::Complex::zero(prec);
  std::vector<ap::Complex> pt;
  pt.reserve(point.size());
  for (const auto& x : point) pt.push_back(x.with_precision(prec));
  std::vector<std::pair<const Exponents*, const GaussRat*>> flat;
  for (const auto& [e, c] : terms_) flat.emplace_back(&e, &c);
  auto coef = [prec](const GaussRat& c) { return c.to_complex(prec); };
  auto power = [](const ap::Complex& x, unsigned n) { return ap::pow(x, static_cast<long>(n)); };
  return horner<ap::Complex>(flat.cbegin(), flat.cend(), 0, std::span<const ap::Complex>(pt), coef, power,
                             ap::Complex::zero(prec));
}

std::complex<double> MultiPoly::eval(std::span<const std::complex<double>> point) const {
  if (point.size() != dim()) throw Error(ErrorKind::domain, kModule, "point dimension mismatch");
  if (terms_.empty()) return 0.0;
  std::vector<std::pair<const Exponents*, const GaussRat*>> flat;
  for (const auto& [e, c] : terms_) flat.emplace_back(&e, &c);
  auto coef = [](const GaussRat& c) { return std::complex<double>(c.real().get_d(), c.imag().get_d()); };
  auto power = [](std::complex<double> x, unsigned n) {
    std::complex<double> r = 1.0;
    while (n--) r *= x;
    return r;
  };
  return horner<std::complex<double>>(flat.cbegin(), flat.cend(), 0, point, coef, power,
                                      std::complex<double>(0.0));
}

GaussRat MultiPoly::eval_exact(std::span<const GaussRat> point) const {
  if (point.size() != dim()) throw Error(ErrorKind::domain, kModule, "point dimension mismatch");
  GaussRat sum;
  for (const auto& [e, c] : terms_) {
    GaussRat t = c;
    for (size_t j = 0; j < dim(); ++j)
      for (unsigned k = 0; k < e[j]; ++k) t *= point[j];
    sum += t;
  }
  return sum;
}

namespace {

template <class Scalar, class Coef>
std::vector<Scalar> collect_in(const MultiPoly& p, size_t var, std::span<const Scalar> point, const Coef& coef,
                               const Scalar& zero) {
  if (point.size() != p.dim()) throw Error(ErrorKind::domain, kModule, "point dimension mismatch");
  if (var >= p.dim()) throw Error(ErrorKind::domain, kModule, "variable index out of range");
  int deg = p.degree_in(var);
  std::vector<Scalar> out(static_cast<size_t>(std::max(deg, 0)) + 1, zero);
  for (const auto& [e, c] : p.terms()) {
    Scalar t = coef(c);
    for (size_t j = 0; j < p.dim(); ++j) {
      if (j == var) continue;
      for (unsigned k = 0; k < e[j]; ++k) t = t * point[j];
    }
    out[e[var]] = out[e[var]] + t;
  }
  return out;
}

}  // namespace

std::vector<ap::Complex> MultiPoly::coefficients_in(size_t var, std::span<const ap::Complex> point) const {
  ap::Precision prec = ap::kDefaultPrecision;
  bool have = false;
  for (size_t j = 0; j < point.size(); ++j) {
    if (j == var) continue;
    prec = have ? std::min(prec, point[j].precision()) : point[j].precision();
    have = true;
  }
  if (!have && !point.empty()) prec = point[0].precision();
  auto coef = [prec](const GaussRat& c) { return c.to_complex(prec); };
  return collect_in<ap::Complex>(*this, var, point, coef, ap::Complex::zero(prec));
}

std::vector<std::complex<double>> MultiPoly::coefficients_in(size_t var,
                                                             std::span<const std::complex<double>> point) const {
  auto coef = [](const GaussRat& c) { return std::complex<double>(c.real().get_d(), c.imag().get_d()); };
  return collect_in<std::complex<double>>(*this, var, point, coef, std::complex<double>(0.0));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest total degree first, lexicographic within a degree.
  std::vector<const TermMap::value_type*> order;
  for (const auto& kv : terms_) order.push_back(&kv);
  auto deg = [](const Exponents& e) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    return s;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](auto* a, auto* b) { return deg(a->first) < deg(b->first); });
  bool first = true;
  for (const auto* kv : order) {
    const auto& [e, c] = *kv;
    GaussRat coeff = c;
    bool negative = coeff.is_real() && sgn(coeff.real()) < 0;
    if (negative) coeff = -coeff;
    std::string mono;
    for (size_t j = 0; j < dim(); ++j) {
      if (e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[j];
      if (e[j] > 1) mono += "^" + std::to_string(e[j]);
    }
    std::string body;
    if (mono.empty()) {
      body = coeff.to_string();
    } else if (coeff == GaussRat(1)) {
      body = mono;
    } else {
      body = coeff.to_string() + "*" + mono;
    }
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {
    imaginary_unit_ = std::find(vars.begin(), vars.end(), "I") == vars.end();
    // Longest names first so that "zw" with variables {z, w, zw} picks zw.
    for (size_t j = 0; j < vars.size(); ++j) by_length_.push_back(j);
    std::stable_sort(by_length_.begin(), by_length_.end(),
                     [&](size_t a, size_t b) { return vars[a].size() > vars[b].size(); });
  }

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    parse_error(msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  MultiPoly expr() {
    MultiPoly acc(vars_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    MultiPoly t = term();
    acc = negate ? acc - t : acc + t;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_';
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        skip_ws();
        mpq_class d = integer_literal();
        if (sgn(d) == 0) fail("division by zero");
        acc *= GaussRat(mpq_class(1 / d));
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      if (peek('-')) fail(kLaurentHint);
      mpq_class e = integer_literal();
      if (e > 100000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_num().get_ui()));
    }
    return base;
  }

  mpq_class integer_literal() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpq_class(mpz_class(s_.substr(start, pos_ - start)));
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q = integer_literal();
      // "p/q" directly after an integer is a rational literal.
      size_t save = pos_;
      if (accept('/')) {
        skip_ws();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          mpq_class d = integer_literal();
          if (sgn(d) == 0) fail("zero denominator");
          q /= d;
        } else {
          pos_ = save;
        }
      }
      return MultiPoly::constant(vars_, GaussRat(q));
    }
    for (size_t j : by_length_) {
      const std::string& name = vars_[j];
      if (s_.compare(pos_, name.size(), name) == 0) {
        pos_ += name.size();
        return MultiPoly::variable(vars_, j);
      }
    }
    if (imaginary_unit_ && c == 'I') {
      ++pos_;
      return MultiPoly::constant(vars_, GaussRat(mpq_class(0), mpq_class(1)));
    }
    size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    fail("unknown variable '" + s_.substr(pos_, end - pos_) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::vector<size_t> by_length_;
  bool imaginary_unit_ = true;
  size_t pos_ = 0;
};

}  // namespace

MultiPoly poly_parse(const std::string& text, const std::vector<std::string>& vars) {
  for (size_t a = 0; a < vars.size(); ++a) {
    if (vars[a].empty()) parse_error("empty variable name");
    for (size_t b = a + 1; b < vars.size(); ++b)
      if (vars[a] == vars[b]) parse_error("duplicate variable name '" + vars[a] + "'");
  }
  return Parser(text, vars).parse();
}

ap::Complex poly_eval(const MultiPoly& p, std::span<const ap::Complex> point) { return p.eval(point); }

MultiPoly poly_partial(const MultiPoly& p, size_t var_index) { return p.partial(var_index); }

}  // namespace acsv
