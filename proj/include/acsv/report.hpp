#pragma once

// Records emitted by the command-line front end, in an aligned text form and
// a structured (JSON) form. Numbers are decimal strings throughout.

#include <optional>
#include <string>
#include <vector>

#include "acsv/asymptotics.hpp"
#include "acsv/critical.hpp"

namespace acsv {

struct CompareRow {
  std::vector<long> index;
  std::string exact;       // exact rational (Gaussian rational when complex)
  std::string estimate;    // decimal; "re+im*I" when the estimate is complex
  std::string rel_error;   // empty when the exact value is zero
  std::string abs_estimate;  // |estimate| / |leading scale|, reported on zero rows
  std::optional<std::string> quadrature;
  std::optional<std::string> quadrature_rel_error;
  friend bool operator==(const CompareRow&, const CompareRow&) = default;
};

struct CompareReport {
  std::string direction;
  std::vector<std::string> point;  // "re+im*I" per coordinate
  std::string minimality;
  int terms = 1;
  std::vector<CompareRow> rows;  // increasing r_d
  bool converged = true;         // relative errors nonincreasing over the sweep
  friend bool operator==(const CompareReport&, const CompareReport&) = default;
};

// Multipliers m for r = m * dir: halve `upto` while even (stopping after the
// first odd value), then list in increasing order. upto = 0 gives none.
std::vector<long> compare_ladder(long upto);

CompareReport build_compare(const RationalGF& gf, const Direction& dir, int terms, long upto, bool with_quadrature,
                            const SearchOptions& opts = {});

std::string compare_text(const CompareReport& r);
std::string compare_json(const CompareReport& r);
CompareReport compare_from_json(const std::string& text);

std::string critical_text(const std::vector<CriticalPoint>& pts, const std::vector<std::optional<int>>& ks);
std::string critical_json(const std::vector<CriticalPoint>& pts, const std::vector<std::optional<int>>& ks);

std::string asymp_text(const CombinedExpansion& e, const std::vector<std::string>& vars);
std::string asymp_json(const CombinedExpansion& e, const std::vector<std::string>& vars);

std::string decimal(const ap::Complex& z, int digits = 0);  // full precision when digits <= 0

}  // namespace acsv
