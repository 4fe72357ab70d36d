#include "acsv/random_gf.hpp"

namespace acsv {

RationalGF random_positive_gf(std::mt19937_64& rng, size_t dim) {
  std::vector<std::string> vars;
  for (size_t j = 0; j < dim; ++j) vars.push_back(dim <= 3 ? std::string(1, "zwu"[j]) : "x" + std::to_string(j + 1));
  std::uniform_int_distribution<long> num(1, 6), den(4, 16);
  auto coeff = [&] { return GaussRat(mpq_class(num(rng), den(rng))); };
  std::vector<std::pair<Exponents, GaussRat>> h{{Exponents(dim, 0), GaussRat(1)}};
  std::vector<std::pair<Exponents, GaussRat>> g{{Exponents(dim, 0), GaussRat(1)}};
  for (size_t j = 0; j < dim; ++j) {
    Exponents e(dim, 0);
    e[j] = 1;
    h.emplace_back(e, -coeff());
    g.emplace_back(e, GaussRat(mpq_class(num(rng) - 1, 4)));
    for (size_t k = j; k < dim; ++k) {
      Exponents e2 = e;
      ++e2[k];
      h.emplace_back(e2, -coeff());
    }
  }
  return gf_new(MultiPoly::from_terms(vars, g), MultiPoly::from_terms(vars, h));
}

Direction random_direction(std::mt19937_64& rng, size_t dim, long max_component) {
  std::uniform_int_distribution<long> c(1, max_component);
  std::vector<long> comps;
  for (size_t j = 0; j < dim; ++j) comps.push_back(c(rng));
  return Direction::from_ints(comps);
}

}  // namespace acsv
