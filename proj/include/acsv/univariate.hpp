#pragma once

// Exact univariate polynomials over Gaussian rationals, with the pieces the
// 2-d critical-point solver needs: gcd, squarefree part and a fraction-free
// Sylvester resultant for polynomials whose coefficients are themselves
// univariate.

#include <complex>
#include <string>
#include <vector>

#include "acsv/ap.hpp"
#include "acsv/gauss_rational.hpp"
#include "acsv/multipoly.hpp"

namespace acsv {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<GaussRat> coeffs);  // coeffs[i] multiplies x^i
  static UniPoly constant(const GaussRat& c) { return UniPoly({c}); }
  static UniPoly x() { return UniPoly({GaussRat(0), GaussRat(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<GaussRat>& coeffs() const { return c_; }
  const GaussRat& leading() const { return c_.back(); }
  GaussRat operator[](size_t i) const { return i < c_.size() ? c_[i] : GaussRat(); }

  UniPoly derivative() const;
  UniPoly monic() const;
  GaussRat eval(const GaussRat& x) const;
  std::vector<ap::Complex> to_complex(ap::Precision prec) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<GaussRat> c_;
};

// Quotient and remainder; throws on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
// Exact division; throws Error(numerical) if the remainder is nonzero.
UniPoly exact_quotient(const UniPoly& a, const UniPoly& b);
// Monic gcd (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
// p / gcd(p, p'), monic.
UniPoly squarefree_part(const UniPoly& p);

// A bivariate polynomial viewed as a polynomial in `main_var` whose
// coefficients are univariate in the other variable.
using UniPolyOverUni = std::vector<UniPoly>;
UniPolyOverUni as_poly_in(const MultiPoly& p, size_t main_var);

// Resultant with respect to the main variable, via the Sylvester matrix and
// fraction-free (Bareiss) elimination over Q[x].
UniPoly resultant(const UniPolyOverUni& p, const UniPolyOverUni& q);

// Determinant of a square matrix with UniPoly entries (Bareiss).
UniPoly bareiss_determinant(std::vector<std::vector<UniPoly>> m);

}  // namespace acsv
