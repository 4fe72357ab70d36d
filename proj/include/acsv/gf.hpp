#pragma once

// Validated rational generating function F = G/H and its file format.

#include <iosfwd>
#include <string>
#include <vector>

#include "acsv/multipoly.hpp"

namespace acsv {

class RationalGF {
 public:
  const MultiPoly& numerator() const { return g_; }
  const MultiPoly& denominator() const { return h_; }
  const std::vector<std::string>& vars() const { return h_.vars(); }
  size_t dim() const { return h_.dim(); }

  // Same function with variables reordered (see MultiPoly::permuted).
  RationalGF permuted(std::span<const size_t> perm) const;

 private:
  friend RationalGF gf_new(MultiPoly g, MultiPoly h);
  RationalGF(MultiPoly g, MultiPoly h) : g_(std::move(g)), h_(std::move(h)) {}

  MultiPoly g_;
  MultiPoly h_;
};

// Throws Error(domain) if H(0) = 0 or the variable lists differ.
RationalGF gf_new(MultiPoly g, MultiPoly h);

// GF documents: {"vars": [...], "numerator": ..., "denominator": ...} where
// each side is either a list of {"coeff": "p/q", "coeff_im": "p/q", "exps": [...]}
// records or a polynomial expression string. See docs/gf-format.md.
RationalGF gf_from_json_text(const std::string& text);
RationalGF gf_read_file(const std::string& path);
std::string gf_to_json_text(const RationalGF& gf);

}  // namespace acsv
