#pragma once

// Exact coefficient oracle: a_r from the recurrence sum_m h_m a_{r-m} = g_r.

#include <span>
#include <string>
#include <vector>

#include "acsv/gauss_rational.hpp"
#include "acsv/gf.hpp"

namespace acsv {

// Dense box of exact coefficients a_r, 0 <= r <= bounds componentwise.
class CoefficientLattice {
 public:
  CoefficientLattice(std::vector<unsigned> bounds, std::vector<GaussRat> values);

  const std::vector<unsigned>& bounds() const { return bounds_; }
  size_t size() const { return values_.size(); }
  // Zero for any negative component; throws if r exceeds the bounds.
  GaussRat at(std::span<const long> r) const;
  // One line per index, "r1,...,rd: p/q", in lexicographic order.
  std::string export_text() const;

 private:
  std::vector<unsigned> bounds_;
  std::vector<GaussRat> values_;
};

// Largest bound accepted per component.
inline constexpr long kMaxIndex = 1000000;

CoefficientLattice extract_coefficients(const RationalGF& gf, std::span<const long> bounds);

// a_{m*dir} for m = 0..m_max. Uses rolling storage along the last axis, so
// memory is proportional to a single slab of the bounding box rather than to
// the whole box.
std::vector<GaussRat> ray_coefficients(const RationalGF& gf, std::span<const long> dir, long m_max);

// a_r for one index (rolling storage as above).
GaussRat single_coefficient(const RationalGF& gf, std::span<const long> r);

}  // namespace acsv
