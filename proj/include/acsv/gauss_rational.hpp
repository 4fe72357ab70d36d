#pragma once

#include <gmpxx.h>

#include <string>

#include "acsv/ap.hpp"

namespace acsv {

// Exact Gaussian rational p + q i with p, q big rationals. Real coefficients
// simply carry q = 0.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v) {}                    // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  // Accepts "p", "-p", "p/q"; throws acsv::Error(parse) otherwise.
  static mpq_class parse_rational(const std::string& text);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
  GaussRat& operator/=(const GaussRat& o) { return *this = *this / o; }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re_, -a.im_}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    if (a.is_real() && b.is_real()) return GaussRat(mpq_class(a.re_ * b.re_));
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussRat conj() const { return {re_, -im_}; }

  ap::Complex to_complex(ap::Precision prec) const {
    return {ap::Real(re_, prec), ap::Real(im_, prec)};
  }

  // "3", "-1/2", "(1/2+3*I)", "(-2*I)"; parseable by the polynomial parser.
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace acsv
