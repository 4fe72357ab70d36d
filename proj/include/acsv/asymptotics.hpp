#pragma once

// Asymptotic expansions of a_r at smooth minimal points: the local series
// (g, phase, amplitude), the Gamma constants, the b* coefficients, the full
// two-variable expansion, and the leading term in higher dimension.

#include <string>
#include <vector>

#include "acsv/ap.hpp"
#include "acsv/critical.hpp"
#include "acsv/gf.hpp"
#include "acsv/series.hpp"

namespace acsv {

// Variables reordered so that `axis` comes last (the "w" / z_d role).
struct Frame {
  std::vector<size_t> perm;  // working variable j = original variable perm[j]
  RationalGF gf;
  Point z;
  Direction dir;
};
Frame make_frame(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis);

// Taylor coefficients of g (with H(z + x, g) = 0, g(0) = w) in x = zhat - z,
// by series Newton iteration. Two variables, axis last.
FormalSeries implicit_g_series(const RationalGF& gf, const Point& pt, int order);

struct Phase {
  FormalSeries f;  // f~(theta)
  int k = 0;       // order of vanishing
  ap::Complex ck;  // leading coefficient (projected onto iR when k is odd)
};

// g~(theta) = g(z e^{i theta}).
FormalSeries g_tilde_series(const FormalSeries& g, const ap::Complex& z);
// f~(theta) = log(g~(theta)/w) + i (r/s) theta. Throws if f~(0) or f~'(0)
// is not negligible (direction does not match the point).
Phase phase_series(const FormalSeries& g_tilde, const mpq_class& r_over_s);
// psi~(theta) = G(Z, g~) / (-g~ H_w(Z, g~)), Z = z e^{i theta}.
FormalSeries amplitude_series(const RationalGF& gf, const Point& pt, const FormalSeries& g_tilde);

struct GammaConstants {
  ap::Real a_plus;     // Gamma((l+1)/k)/k
  ap::Complex a;       // two-sided constant for Im c_k >= 0
  ap::Complex a_cal;   // the constant actually used (conjugated when Im c_k < 0)
};
GammaConstants gamma_constants(int k, int l, const ap::Complex& ck);

// b*_l for l = 0..count-1, from y = f^{1/k}, eta = y^{-1}, (psi o eta) eta'.
// Needs phase order >= count + k - 1 and amplitude order >= count - 1.
std::vector<ap::Complex> bstar_coefficients(const FormalSeries& phase, const FormalSeries& amplitude, int k,
                                            int count);

struct ExpansionTerm {
  int l = 0;
  ap::Complex coeff;
  mpq_class exponent;  // power of r_axis carried by the term
};

struct AsymptoticExpansion {
  Point point;                    // original variable order
  std::vector<ap::Complex> log_base;  // log z_j; the exponential factor is exp(-r . log_base)
  size_t scale_axis = 0;
  size_t dim = 0;
  int k = 2;
  int l0 = 0;
  ap::Complex ck;
  std::vector<ExpansionTerm> terms;
  bool siblings_included = false;
  ap::Precision precision = ap::kDefaultPrecision;
};

// Everything about the local geometry at a two-variable point, in the
// working frame (axis last).
struct LocalData2d {
  Frame frame;
  FormalSeries g;          // in x = zhat - z
  FormalSeries g_tilde;    // in theta
  Phase phase;
  FormalSeries amplitude;  // psi~
  int l0 = 0;
};
LocalData2d local_data_2d(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis, int order);

// Closed forms at a two-variable point (working frame): g', g'', psi(0),
// f~''(0) via g', g'', and the polynomial Q.
struct ClosedForms {
  ap::Complex g1, g2, psi0, ft2, q;
};
ClosedForms closed_forms_2d(const RationalGF& gf, const Point& pt, const Direction& dir);

AsymptoticExpansion expand_2d(const RationalGF& gf, const CriticalPoint& pt, int num_terms);

struct LeadingSimple {
  ap::Complex coefficient;  // multiplies z^-r w^-s s^{-1/2}
  ap::Complex q;
};
LeadingSimple leading_simple_2d(const RationalGF& gf, const CriticalPoint& pt);

struct HigherDData {
  Frame frame;
  std::vector<std::vector<ap::Complex>> hessian;
  std::vector<ap::Complex> eigenvalues;
  ap::Complex psi0;
};
HigherDData higher_d_data(const RationalGF& gf, const CriticalPoint& pt);
AsymptoticExpansion leading_higher_d(const RationalGF& gf, const CriticalPoint& pt);

// Sum of contributions from the points of one torus.
struct CombinedExpansion {
  std::vector<AsymptoticExpansion> parts;
  bool real_coefficients = true;  // report the real part of the sum
};
CombinedExpansion combine_finitely_minimal(std::vector<AsymptoticExpansion> expansions);

ap::Complex evaluate_expansion(const AsymptoticExpansion& e, std::span<const long> r, int num_terms);
ap::Complex evaluate_expansion(const CombinedExpansion& e, std::span<const long> r, int num_terms);

// Finds the contributing point(s) for `dir` and builds the expansion,
// routing strict / finitely minimal / d >= 3.
CombinedExpansion asymptotics_for(const RationalGF& gf, const Direction& dir, int num_terms,
                                  const SearchOptions& opts = {});

// "a_r ~ z^-r w^-s sum_l C_l s^-(l+1)/k" style summary.
std::string formula_string(const AsymptoticExpansion& e, const std::vector<std::string>& vars);

}  // namespace acsv
