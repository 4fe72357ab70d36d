#pragma once

// Truncated univariate power series with arbitrary-precision complex
// coefficients. A series of order N knows the coefficients of x^0..x^N;
// everything beyond is unknown (not zero), and every operation returns the
// largest order it can justify.

#include <span>
#include <vector>

#include "acsv/ap.hpp"
#include "acsv/multipoly.hpp"

namespace acsv {

class FormalSeries {
 public:
  FormalSeries() = default;
  explicit FormalSeries(std::vector<ap::Complex> coeffs);  // order = size - 1
  static FormalSeries zero(int order, ap::Precision prec);
  static FormalSeries constant(const ap::Complex& c, int order);
  static FormalSeries x(int order, ap::Precision prec);  // the identity series

  int order() const { return static_cast<int>(c_.size()) - 1; }
  ap::Precision precision() const { return prec_; }
  const std::vector<ap::Complex>& coeffs() const { return c_; }
  const ap::Complex& operator[](size_t j) const { return c_.at(j); }
  ap::Complex& operator[](size_t j) { return c_.at(j); }

  FormalSeries truncated(int order) const;
  // Index of the first coefficient with modulus above eps, or -1.
  int valuation(const ap::Real& eps) const;
  ap::Complex eval(const ap::Complex& x) const;

  FormalSeries derivative() const;
  // Antiderivative with zero constant term.
  FormalSeries integral() const;
  // Divides by x^n; requires the first n coefficients to be negligible.
  FormalSeries shift_down(int n) const;

  friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
  friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
  friend FormalSeries operator-(const FormalSeries& a);
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
  friend FormalSeries operator*(const FormalSeries& a, const ap::Complex& s);
  friend FormalSeries operator*(const ap::Complex& s, const FormalSeries& a) { return a * s; }
  friend FormalSeries operator+(const FormalSeries& a, const ap::Complex& s);

 private:
  std::vector<ap::Complex> c_;
  ap::Precision prec_ = ap::kDefaultPrecision;
};

// Half-precision zero threshold 2^-(prec/2).
ap::Real eps_zero(ap::Precision prec);

FormalSeries ps_reciprocal(const FormalSeries& s);  // needs s[0] != 0
FormalSeries ps_div(const FormalSeries& a, const FormalSeries& b);
FormalSeries ps_exp(const FormalSeries& s);  // any constant term
FormalSeries ps_log1p(const FormalSeries& s);  // needs s[0] == 0
FormalSeries ps_pow(const FormalSeries& s, unsigned n);
// Series y with y^k = s, leading coefficient the principal k-th root of the
// first nonzero coefficient of s. s must vanish to order exactly k.
FormalSeries ps_kth_root(const FormalSeries& s, int k);
// outer(inner(x)); needs inner[0] == 0.
FormalSeries ps_compose(const FormalSeries& outer, const FormalSeries& inner);
// Compositional inverse; needs y[0] == 0 and y[1] != 0.
FormalSeries ps_revert(const FormalSeries& y);

// Evaluates a multivariate polynomial with one series substituted for each
// variable.
FormalSeries poly_eval_series(const MultiPoly& p, std::span<const FormalSeries> args);

}  // namespace acsv
