#pragma once

// Critical points of F = G/H for a direction r: solving the critical system,
// the simple-pole check, dir(z), and numerical minimality classification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acsv/ap.hpp"
#include "acsv/gf.hpp"

namespace acsv {

// Projective direction with rational components, stored as the primitive
// integer vector (components divided by their gcd, sign preserved).
class Direction {
 public:
  explicit Direction(const std::vector<mpq_class>& comps);
  static Direction from_ints(const std::vector<long>& comps);
  // "4,3" or "1/2,1,3"
  static Direction parse(const std::string& text);

  size_t dim() const { return comps_.size(); }
  const std::vector<mpz_class>& components() const { return comps_; }
  long component(size_t j) const { return comps_.at(j).get_si(); }
  // r_j / r_axis
  mpq_class ratio(size_t j, size_t axis) const;
  Direction permuted(std::span<const size_t> perm) const;
  std::string to_string() const;
  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  std::vector<mpz_class> comps_;
};

using Point = std::vector<ap::Complex>;

enum class Minimality { strict, finitely_minimal, toral_suspected, not_minimal, unknown };
std::string to_string(Minimality m);

struct CriticalPoint {
  Point coords;
  Direction direction;
  bool pole_simple = false;
  size_t axis = 0;  // nonvanishing axis (plays the role of z_d)
  Minimality minimality = Minimality::unknown;
  std::vector<Point> siblings;  // other points of V on the same torus (finitely minimal)
  bool certified = false;       // classification from the d = 2 slice scan rather than sampling
  ap::Real residual;            // |H(coords)|
  ap::Precision precision = ap::kDefaultPrecision;
};

// {H} together with r_axis z_j H_j - r_j z_axis H_axis for j != axis
// (axis defaults to the last variable).
std::vector<MultiPoly> critical_system(const RationalGF& gf, const Direction& dir,
                                       std::optional<size_t> axis = std::nullopt);

// Throws Error(out_of_scope) when H has a repeated factor (d = 2 check via
// discriminants) or does not involve every variable.
void check_squarefree_2d(const RationalGF& gf);

// All isolated solutions of the critical system (d = 2) via the resultant in
// the second variable. Each point has |H| < 2^-(prec-8).
std::vector<Point> solve_critical_2d(const RationalGF& gf, const Direction& dir,
                                     ap::Precision prec = ap::kDefaultPrecision);

struct NdSolveOptions {
  int starts = 64;
  double inner_radius = 0.1;
  double outer_radius = 2.0;
  std::uint64_t seed = 1;
  ap::Precision precision = ap::kDefaultPrecision;
};

// Damped Newton from pseudorandom starts plus the positive diagonal seed.
// No completeness guarantee.
std::vector<Point> solve_critical_nd(const RationalGF& gf, const Direction& dir, const NdSolveOptions& opts = {});

struct PoleCheck {
  bool simple = false;
  size_t axis = 0;
};
PoleCheck check_simple_pole(const RationalGF& gf, const Point& pt);

struct DirInfo {
  std::vector<ap::Complex> vector;  // (z_1 H_1, ..., z_d H_d)
  std::vector<ap::Complex> ratios;  // z_j H_j / (z_axis H_axis)
  bool ratios_real_nonnegative = true;
  ap::Real worst_imag;              // largest |Im ratio|
};
DirInfo dir_of(const RationalGF& gf, const Point& pt, size_t axis);

struct MinimalityOptions {
  int grid = 720;
  int radial_levels = 64;
  double tol = 1e-10;
  int toral_run = 8;  // consecutive torus hits that suggest a toral point
  std::uint64_t seed = 1;
};

struct MinimalityResult {
  Minimality tag = Minimality::unknown;
  std::vector<Point> siblings;
  bool certified = false;
};

MinimalityResult classify_minimality(const RationalGF& gf, const Point& pt, const Direction& dir, size_t axis,
                                     const MinimalityOptions& opts = {});

struct SearchOptions {
  ap::Precision precision = ap::kDefaultPrecision;
  MinimalityOptions minimality;
  NdSolveOptions nd;
};

// Every critical point for `dir`, with pole check and classification.
std::vector<CriticalPoint> find_critical_points(const RationalGF& gf, const Direction& dir,
                                                const SearchOptions& opts = {});

// The point governing the asymptotics in direction `dir`: a minimal (strict
// or finitely minimal) simple pole. Throws Error(out_of_scope) for
// non-simple poles, toral points, or when no minimal critical point is found.
CriticalPoint contributing_point(const RationalGF& gf, const Direction& dir, const SearchOptions& opts = {});

}  // namespace acsv
