#include "acsv/ap.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "acsv/error.hpp"

namespace acsv::ap {

namespace {

Precision max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(Precision prec, RawTag) { mpfr_init2(v_, std::max<Precision>(prec, MPFR_PREC_MIN)); }

Real::Real() : Real(kMinPrecision, Real::RawTag{}) { mpfr_set_zero(v_, 1); }

Real::Real(int v) : Real(64, Real::RawTag{}) { mpfr_set_si(v_, v, MPFR_RNDN); }

Real::Real(long v) : Real(64, Real::RawTag{}) { mpfr_set_si(v_, v, MPFR_RNDN); }

Real::Real(double v) : Real(53, Real::RawTag{}) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(double v, Precision prec) : Real(prec, Real::RawTag{}) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(const mpz_class& v, Precision prec) : Real(prec, Real::RawTag{}) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, Precision prec) : Real(prec, Real::RawTag{}) {
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) : Real(o.precision(), Real::RawTag{}) { mpfr_set(v_, o.v_, MPFR_RNDN); }

Real::Real(Real&& o) noexcept : Real(MPFR_PREC_MIN, Real::RawTag{}) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    if (precision() != o.precision()) mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::zero(Precision prec) {
  Real r(prec, Real::RawTag{});
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::pi(Precision prec) {
  Real r(prec, Real::RawTag{});
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::parse(const std::string& text, Precision prec) {
  Real r(prec, Real::RawTag{});
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0 || !r.is_finite()) {
    throw Error(ErrorKind::parse, "ap", "not a finite decimal number: '" + text + "'");
  }
  return r;
}

Real Real::pow2(long e, Precision prec) {
  Real r(prec, Real::RawTag{});
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

Real Real::with_precision(Precision prec) const {
  Real r(prec, Real::RawTag{});
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::exponent() const {
  if (!mpfr_regular_p(v_)) return mpfr_zero_p(v_) ? -(1L << 40) : (1L << 40);
  return mpfr_get_exp(v_);
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return buf.data();
}

void Real::raise_precision(Precision prec) {
  if (prec > precision()) mpfr_prec_round(v_, prec, MPFR_RNDN);
}

Real& Real::operator+=(const Real& o) {
  raise_precision(o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  raise_precision(o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  raise_precision(o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  raise_precision(o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b), Real::RawTag{});
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b), Real::RawTag{});
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b), Real::RawTag{});
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(max_prec(a, b), Real::RawTag{});
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.precision(), Real::RawTag{});
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define ACSV_UNARY(name, fn)             \
  Real name(const Real& a) {             \
    Real r(a.precision(), Real::RawTag{});            \
    fn(r.v_, a.v_, MPFR_RNDN);           \
    return r;                            \
  }

ACSV_UNARY(abs, mpfr_abs)
ACSV_UNARY(sqrt, mpfr_sqrt)
ACSV_UNARY(exp, mpfr_exp)
ACSV_UNARY(log, mpfr_log)
ACSV_UNARY(sin, mpfr_sin)
ACSV_UNARY(cos, mpfr_cos)
ACSV_UNARY(tgamma, mpfr_gamma)

#undef ACSV_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(y, x), Real::RawTag{});
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

Real pow(const Real& a, const Real& b) {
  Real r(max_prec(a, b), Real::RawTag{});
  mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(max_prec(a, b), Real::RawTag{});
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& a, long e) {
  Real r(a.precision(), Real::RawTag{});
  mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(20); }

// ---------------------------------------------------------------------------

Precision Complex::precision() const { return std::max(re_.precision(), im_.precision()); }

Complex Complex::polar(const Real& r, const Real& theta) {
  return {r * cos(theta), r * sin(theta)};
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
}

Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }

Real abs(const Complex& z) { return hypot(z.real(), z.imag()); }

Real norm(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

Real arg(const Complex& z) { return atan2(z.imag(), z.real()); }

Complex exp(const Complex& z) { return Complex::polar(exp(z.real()), z.imag()); }

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex::zero(z.precision());
  // Stable principal root: t = sqrt((|z| + |x|)/2).
  Real m = abs(z);
  Real t = sqrt(ldexp(m + abs(z.real()), -1));
  if (z.real().sign() >= 0) return {t, z.imag() / ldexp(t, 1)};
  Real u = abs(z.imag()) / ldexp(t, 1);
  return {u, z.imag().sign() < 0 ? -t : t};
}

Complex pow(const Complex& z, const Real& p) {
  if (z.is_zero()) return Complex::zero(std::max(z.precision(), p.precision()));
  return exp(log(z) * Complex(p));
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1)) / pow(z, -n);
  Complex result = Complex(Real(1.0, z.precision()));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Complex expi(const Real& theta) { return {cos(theta), sin(theta)}; }

Complex ldexp(const Complex& z, long e) { return {ldexp(z.real(), e), ldexp(z.imag(), e)}; }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.real() << ", " << z.imag() << ')';
}

Real tolerance(Precision prec, long slack) { return Real::pow2(-(static_cast<long>(prec) - slack), prec); }

}  // namespace acsv::ap
