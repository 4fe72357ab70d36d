#include "acsv/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "acsv/error.hpp"

namespace acsv {

namespace {

double magnitude(const std::complex<double>& z) { return std::abs(z); }
double magnitude(const ap::Complex& z) { return ap::abs(z).to_double(); }

// p(z) and p'(z) by Horner.
template <class C>
void horner2(const std::vector<C>& a, const C& z, C& p, C& dp) {
  p = a.back();
  dp = a.back() * C(0.0);
  for (size_t i = a.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
}

// One Aberth sweep per iteration (Gauss-Seidel style: updated roots are used
// immediately). `tol` is a relative step threshold.
template <class C>
bool aberth_iterate(const std::vector<C>& a, std::vector<C>& z, double tol, int max_iter, int& iters) {
  size_t n = z.size();
  std::vector<bool> done(n, false);
  for (iters = 0; iters < max_iter; ++iters) {
    bool all = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      C p, dp;
      horner2(a, z[i], p, dp);
      if (magnitude(p) == 0.0) {
        done[i] = true;
        continue;
      }
      C ratio = p / dp;
      C sum = z[i] * C(0.0);
      for (size_t j = 0; j < n; ++j) {
        if (j != i) sum = sum + C(1.0) / (z[i] - z[j]);
      }
      C step = ratio / (C(1.0) - ratio * sum);
      z[i] = z[i] - step;
      double scale = std::max(magnitude(z[i]), 1e-300);
      if (magnitude(step) <= tol * scale) {
        done[i] = true;
      } else {
        all = false;
      }
    }
    if (all) return true;
  }
  return false;
}

// Start points on a circle whose radius comes from the Fujiwara-type bound,
// with an irrational phase offset to avoid symmetric stalls.
std::vector<std::complex<double>> initial_points(const std::vector<std::complex<double>>& a) {
  size_t n = a.size() - 1;
  double lead = std::abs(a.back());
  double radius = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = std::pow(std::abs(a[i]) / lead, 1.0 / static_cast<double>(n - i));
    radius = std::max(radius, r);
  }
  // Geometric mean of the root moduli is a better centre of mass for the circle.
  double prod = std::abs(a[0]) / lead;
  double gm = prod > 0 ? std::pow(prod, 1.0 / static_cast<double>(n)) : radius / 2;
  double r0 = std::clamp(gm, radius * 1e-3, radius);
  if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1.0;
  std::vector<std::complex<double>> z(n);
  for (size_t k = 0; k < n; ++k) {
    double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(r0, ang);
  }
  return z;
}

template <class C>
std::vector<C> strip_leading_zeros(std::vector<C> a) {
  while (!a.empty() && magnitude(a.back()) == 0.0) a.pop_back();
  return a;
}

}  // namespace

std::vector<std::complex<double>> aberth_roots(const std::vector<std::complex<double>>& coeffs, RootStats* stats,
                                               int max_iter) {
  auto a = strip_leading_zeros(coeffs);
  if (a.size() <= 1) return {};
  // Zero roots come off exactly.
  size_t zeros = 0;
  while (zeros < a.size() && std::abs(a[zeros]) == 0.0) ++zeros;
  std::vector<std::complex<double>> out(zeros, 0.0);
  a.erase(a.begin(), a.begin() + static_cast<long>(zeros));
  if (a.size() <= 1) return out;
  auto z = initial_points(a);
  int iters = 0;
  bool ok = aberth_iterate(a, z, 1e-15, max_iter, iters);
  if (stats) *stats = {iters, ok};
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

std::vector<ap::Complex> aberth_polish(const std::vector<ap::Complex>& coeffs, std::vector<ap::Complex> start,
                                       ap::Precision prec, RootStats* stats, int max_iter) {
  std::vector<ap::Complex> a;
  for (const auto& c : coeffs) a.push_back(c.with_precision(prec));
  a = strip_leading_zeros(std::move(a));
  for (auto& s : start) s = s.with_precision(prec);
  if (start.size() + 1 != a.size()) throw Error(ErrorKind::domain, "roots", "wrong number of starting points");
  // The double-valued threshold bottoms out near 1e-300; at high precision the
  // final sweeps are quadratic-or-better so a few extra passes suffice.
  double tol = std::ldexp(1.0, -static_cast<int>(std::min<ap::Precision>(prec, 1000)) + 6);
  int iters = 0;
  bool ok = aberth_iterate(a, start, tol, max_iter, iters);
  if (stats) *stats = {iters, ok};
  if (!ok) throw Error(ErrorKind::numerical, "roots", "Aberth iteration did not converge");
  return start;
}

std::vector<ap::Complex> aberth_roots(const std::vector<ap::Complex>& coeffs, ap::Precision prec, RootStats* stats,
                                      int max_iter) {
  auto a = strip_leading_zeros(coeffs);
  if (a.size() <= 1) return {};
  size_t zeros = 0;
  while (zeros < a.size() && a[zeros].is_zero()) ++zeros;
  std::vector<ap::Complex> out;
  for (size_t i = 0; i < zeros; ++i) out.push_back(ap::Complex::zero(prec));
  a.erase(a.begin(), a.begin() + static_cast<long>(zeros));
  if (a.size() <= 1) return out;
  // Normalize to a monic polynomial before dropping to double.
  ap::Complex lead = a.back();
  std::vector<std::complex<double>> ad;
  for (auto& c : a) {
    c = c / lead;
    ad.push_back(c.to_std());
  }
  bool finite = std::all_of(ad.begin(), ad.end(), [](auto c) { return std::isfinite(std::abs(c)); });
  std::vector<ap::Complex> start;
  if (finite) {
    for (auto z : aberth_roots(ad, nullptr)) start.emplace_back(z, prec);
    bool good = std::all_of(start.begin(), start.end(), [](const ap::Complex& z) { return z.is_finite(); });
    if (!good) start.clear();
  }
  if (start.empty()) {
    for (size_t k = 0; k + 1 < a.size(); ++k) {
      double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(a.size() - 1) + 0.4;
      start.emplace_back(std::polar(1.0, ang), prec);
    }
  }
  auto roots = aberth_polish(a, std::move(start), prec, stats, max_iter);
  out.insert(out.end(), roots.begin(), roots.end());
  return out;
}

}  // namespace acsv
