#pragma once

// Exact multivariate polynomials over Gaussian rationals.

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "acsv/ap.hpp"
#include "acsv/gauss_rational.hpp"

namespace acsv {

using Exponents = std::vector<unsigned>;

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, GaussRat>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, const GaussRat& c);
  static MultiPoly variable(std::vector<std::string> vars, size_t index);
  // Collects like terms and drops zeros. Throws on exponent-length mismatch.
  static MultiPoly from_terms(std::vector<std::string> vars,
                              const std::vector<std::pair<Exponents, GaussRat>>& terms);

  const std::vector<std::string>& vars() const { return vars_; }
  size_t dim() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_real_coefficients() const;

  GaussRat coefficient(const Exponents& e) const;
  GaussRat constant_term() const;
  int total_degree() const;     // -1 for the zero polynomial
  int degree_in(size_t var) const;  // -1 for the zero polynomial

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussRat& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussRat& c) { return a *= c; }
  friend MultiPoly operator*(const GaussRat& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

  MultiPoly pow(unsigned n) const;
  MultiPoly partial(size_t var) const;
  // Reorders variables: variable j of the result is variable perm[j] of *this.
  MultiPoly permuted(std::span<const size_t> perm) const;

  // Horner evaluation. Coefficients are rounded at the smallest precision
  // among the point coordinates, which is also the precision of the result.
  ap::Complex eval(std::span<const ap::Complex> point) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;
  GaussRat eval_exact(std::span<const GaussRat> point) const;

  // Coefficients c_0..c_deg of the univariate polynomial in `var` obtained by
  // substituting point[j] for every other variable (point[var] is ignored).
  std::vector<ap::Complex> coefficients_in(size_t var, std::span<const ap::Complex> point) const;
  std::vector<std::complex<double>> coefficients_in(size_t var,
                                                    std::span<const std::complex<double>> point) const;

  // Canonical text form, re-parseable by poly_parse with the same variables.
  std::string to_string() const;

 private:
  void check_same_vars(const MultiPoly& o) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

// Parses a polynomial expression such as "1 - z - w - z*w", "3 - 3z - w + z^2",
// "(1 - z - w)^2" or "1/2*z + (1+2*I)*w" over the given variable list.
// `I` is the imaginary unit unless it is declared as a variable.
MultiPoly poly_parse(const std::string& text, const std::vector<std::string>& vars);

ap::Complex poly_eval(const MultiPoly& p, std::span<const ap::Complex> point);
MultiPoly poly_partial(const MultiPoly& p, size_t var_index);

}  // namespace acsv
