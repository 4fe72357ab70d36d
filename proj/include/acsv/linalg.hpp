#pragma once

// Tiny dense complex linear algebra (systems of size <= 9).

#include <complex>
#include <vector>

#include "acsv/ap.hpp"

namespace acsv {

template <class C>
using Matrix = std::vector<std::vector<C>>;

inline double magnitude_of(const std::complex<double>& z) { return std::abs(z); }
inline double magnitude_of(const ap::Complex& z) { return ap::abs(z).to_double(); }

// Solves a x = b by Gaussian elimination with partial pivoting. Returns false
// if a pivot is exactly zero.
template <class C>
bool solve_linear(Matrix<C> a, std::vector<C> b, std::vector<C>& x) {
  size_t n = b.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    double best = magnitude_of(a[k][k]);
    for (size_t i = k + 1; i < n; ++i) {
      double m = magnitude_of(a[i][k]);
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0.0) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (size_t i = k + 1; i < n; ++i) {
      C f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
      b[i] = b[i] - f * b[k];
    }
  }
  x.assign(n, b[0] * C(0.0));
  for (size_t k = n; k-- > 0;) {
    C acc = b[k];
    for (size_t j = k + 1; j < n; ++j) acc = acc - a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  return true;
}

}  // namespace acsv
