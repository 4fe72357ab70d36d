#pragma once

// Independent numerical oracles: the reduced Cauchy integral over a torus
// neighbourhood of a minimal point, and model one-dimensional integrals
// exp(-lambda c x^k) x^l used to arbitrate expansion constants.

#include <functional>
#include <numbers>
#include <span>

#include "acsv/ap.hpp"
#include "acsv/critical.hpp"
#include "acsv/series.hpp"

namespace acsv {

struct QuadratureSpec {
  double halfwidth = std::numbers::pi / 2;  // theta range [-h, h]
  int panels = 16;                          // initial panels per axis
  double tolerance = 1e-25;                 // relative to the L1 size of the integrand
  int max_refinements = 24;                 // bisection depth per panel
  double branch_tolerance = 1e-8;           // root-collision threshold while tracking w = g(z e^{i theta})
};

// Adaptive Gauss-Legendre on [a, b] with panel bisection. Throws
// Error(numerical) when a panel does not converge within max_depth halvings.
ap::Complex adaptive_integral(const std::function<ap::Complex(const ap::Real&)>& f, const ap::Real& a,
                              const ap::Real& b, int panels, double tolerance, int max_depth,
                              ap::Precision prec);

// z^r Xi: (2 pi)^{1-d} times the integral over the theta-neighbourhood of
// exp(-r_d f~(theta)) psi~(theta), with w = g(z e^{i theta}) followed by
// nearest-root continuation from theta = 0. Compare with z^r a_r.
ap::Complex xi_quadrature(const RationalGF& gf, const CriticalPoint& pt, std::span<const long> r,
                          const QuadratureSpec& spec = {});

// Integral of exp(-lambda c x^k) x^l over [0, inf) or (-inf, inf). Decaying
// integrands are truncated where the tail is negligible; purely oscillatory
// ones use a smooth window far enough out that its contribution is
// exponentially small.
ap::Complex model_integral(int k, int l, const ap::Complex& ck, double lambda, bool two_sided,
                           double tolerance = 1e-25);

// Same with a polynomial amplitude (coefficients lowest first).
ap::Complex model_integral(int k, const FormalSeries& amplitude, const ap::Complex& ck, double lambda,
                           bool two_sided, double tolerance = 1e-25);

// Sum over j < count of the expansion of the integral above in powers of
// lambda^{-1/k}, built from gamma_constants and bstar_coefficients.
ap::Complex model_expansion(int k, const FormalSeries& amplitude, const ap::Complex& ck, double lambda,
                            bool two_sided, int count);

}  // namespace acsv
