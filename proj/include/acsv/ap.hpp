#pragma once

// Arbitrary-precision real and complex numbers on top of MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions; integer and double
// operands are exact at 64 and 53 bits, so they never lower a working
// precision.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <complex>
#include <iosfwd>
#include <string>

namespace acsv::ap {

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrecision = 128;
inline constexpr Precision kMinPrecision = 53;

class Real {
 public:
  Real();
  Real(int v);     // NOLINT(google-explicit-constructor)
  Real(long v);    // NOLINT(google-explicit-constructor)
  Real(double v);  // NOLINT(google-explicit-constructor)
  Real(const mpz_class& v, Precision prec);
  Real(const mpq_class& v, Precision prec);
  Real(double v, Precision prec);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real zero(Precision prec);
  static Real pi(Precision prec);
  // Parses a decimal string ("1.25e-3", "-7", "nan" rejected).
  static Real parse(const std::string& text, Precision prec);
  // 2^e at the given precision.
  static Real pow2(long e, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  Real with_precision(Precision prec) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const;  // e such that |x| in [2^(e-1), 2^e); very negative for zero
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Scientific notation with `digits` significant decimal digits; 0 means
  // enough digits to round-trip the stored precision.
  std::string to_string(int digits = 0) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real exp(const Real& a);
  friend Real log(const Real& a);
  friend Real sin(const Real& a);
  friend Real cos(const Real& a);
  friend Real atan2(const Real& y, const Real& x);
  friend Real pow(const Real& a, const Real& b);
  friend Real hypot(const Real& a, const Real& b);
  friend Real tgamma(const Real& a);
  friend Real ldexp(const Real& a, long e);

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
 public:
  struct RawTag {};

 private:
  Real(Precision prec, RawTag);
  void raise_precision(Precision prec);

  mpfr_t v_;
};

// Namespace-scope declarations so that qualified calls (ap::sqrt(x)) work.
Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& a, const Real& b);
Real hypot(const Real& a, const Real& b);
Real tgamma(const Real& a);
Real ldexp(const Real& a, long e);

std::ostream& operator<<(std::ostream& os, const Real& x);

// Complex number with arbitrary-precision parts (the ComplexAP of the
// numeric layer).
class Complex {
 public:
  Complex() = default;
  Complex(Real re) : re_(std::move(re)), im_(Real::zero(re_.precision())) {}  // NOLINT
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(int v) : Complex(Real(v)) {}     // NOLINT
  Complex(long v) : Complex(Real(v)) {}    // NOLINT
  Complex(double v) : Complex(Real(v)) {}  // NOLINT
  Complex(std::complex<double> v, Precision prec)
      : re_(v.real(), prec), im_(v.imag(), prec) {}

  static Complex zero(Precision prec) { return {Real::zero(prec), Real::zero(prec)}; }
  static Complex i(Precision prec) { return {Real::zero(prec), Real(1.0, prec)}; }
  // r * e^{i theta}
  static Complex polar(const Real& r, const Real& theta);

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }
  Real& real() { return re_; }
  Real& imag() { return im_; }

  Precision precision() const;
  Complex with_precision(Precision prec) const {
    return {re_.with_precision(prec), im_.with_precision(prec)};
  }
  std::complex<double> to_std() const { return {re_.to_double(), im_.to_double()}; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex sqrt(const Complex& z);  // principal branch
Complex pow(const Complex& z, const Real& p);  // principal branch
Complex pow(const Complex& z, long n);
Complex expi(const Real& theta);  // e^{i theta}
// z * 2^e
Complex ldexp(const Complex& z, long e);

std::ostream& operator<<(std::ostream& os, const Complex& z);

// Relative tolerance 2^-(prec - slack), the form used throughout for
// "agrees to working precision".
Real tolerance(Precision prec, long slack);

}  // namespace acsv::ap
