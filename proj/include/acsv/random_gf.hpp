#pragma once

// Seeded random rational GFs for property suites.

#include <cstdint>
#include <random>

#include "acsv/critical.hpp"
#include "acsv/gf.hpp"

namespace acsv {

// F = G/(1 - P) with P a dense polynomial of total degree <= 2, positive
// rational coefficients and P(0) = 0, and G a positive linear polynomial.
// Because the support of P contains z_j and z_j z_k, every positive
// direction has a strictly minimal, positive real, simple critical point.
RationalGF random_positive_gf(std::mt19937_64& rng, size_t dim = 2);

// Positive primitive integer direction with components in [1, max_component].
Direction random_direction(std::mt19937_64& rng, size_t dim = 2, long max_component = 5);

}  // namespace acsv
