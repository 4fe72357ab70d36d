#pragma once

// Cross-checks between independent routes through the asymptotics: series vs
// closed forms, the Q identity, leading-term routes, transposition symmetry,
// stationarity, realness of the dir ratios, and the amplitude limit.

#include <string>
#include <vector>

#include "acsv/asymptotics.hpp"

namespace acsv {

struct PropertyResult {
  std::string name;
  double error = 0;      // scaled discrepancy
  double tolerance = 0;
  bool pass() const { return error <= tolerance; }
};

// Implicit-series coefficients 1 and 2 against g' and g'' closed forms at a
// point of V with H_w != 0 (any point, not only critical ones).
PropertyResult check_implicit_series(const RationalGF& gf, const Point& pt);

// Every property applicable to the contributing point of (gf, dir).
// d = 2 runs the full list; d >= 3 runs stationarity and ratio realness.
std::vector<PropertyResult> check_properties(const RationalGF& gf, const Direction& dir,
                                             const SearchOptions& opts = {});

}  // namespace acsv
