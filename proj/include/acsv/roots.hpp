#pragma once

// Simultaneous polynomial root finding (Aberth-Ehrlich).
//
// Coefficients are given lowest degree first. The double version is used as a
// warm start; the AP version polishes all roots together so that close roots
// do not collapse onto one another.

#include <complex>
#include <vector>

#include "acsv/ap.hpp"

namespace acsv {

struct RootStats {
  int iterations = 0;
  bool converged = false;
};

std::vector<std::complex<double>> aberth_roots(const std::vector<std::complex<double>>& coeffs,
                                               RootStats* stats = nullptr, int max_iter = 500);

// All roots of the polynomial at precision `prec`. Throws Error(numerical) if
// the iteration fails to converge. Intended for squarefree input.
std::vector<ap::Complex> aberth_roots(const std::vector<ap::Complex>& coeffs, ap::Precision prec,
                                      RootStats* stats = nullptr, int max_iter = 400);

// Same, with explicit starting points (e.g. roots from a neighbouring problem).
std::vector<ap::Complex> aberth_polish(const std::vector<ap::Complex>& coeffs, std::vector<ap::Complex> start,
                                       ap::Precision prec, RootStats* stats = nullptr, int max_iter = 400);

}  // namespace acsv
