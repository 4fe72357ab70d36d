#include <doctest.h>

#include <random>

#include "acsv/error.hpp"
#include "acsv/lattice.hpp"
#include "acsv/series.hpp"

using namespace acsv;

namespace {
constexpr ap::Precision kPrec = 128;

RationalGF load(const char* name) { return gf_read_file(std::string(ACSV_DATA_DIR) + "/" + name); }

GaussRat at(const CoefficientLattice& l, long a, long b) {
  std::vector<long> r{a, b};
  return l.at(r);
}

ap::Complex cx(double re, double im = 0) { return ap::Complex({re, im}, kPrec); }

FormalSeries series(std::initializer_list<std::complex<double>> cs) {
  std::vector<ap::Complex> v;
  for (auto c : cs) v.emplace_back(c, kPrec);
  return FormalSeries(v);
}

// Coefficients decay like 2^-j so that compositions and inverses stay O(1)
// and absolute tolerances are meaningful.
FormalSeries random_series(std::mt19937& rng, int order, bool zero_const) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<ap::Complex> v;
  for (int j = 0; j <= order; ++j) v.push_back(cx(std::ldexp(u(rng), -j), std::ldexp(u(rng), -j)));
  if (order >= 1) v[1] = v[1] + cx(1);
  if (zero_const) v[0] = ap::Complex::zero(kPrec);
  return FormalSeries(v);
}

double max_diff(const FormalSeries& a, const FormalSeries& b) {
  double m = 0;
  for (int j = 0; j <= std::min(a.order(), b.order()); ++j) m = std::max(m, ap::abs(a[j] - b[j]).to_double());
  return m;
}

const double kTol12 = std::ldexp(1.0, -(128 - 12));
}  // namespace

TEST_CASE("Delannoy lattice") {
  auto gf = load("delannoy.gf");
  std::vector<long> b{5, 5};
  auto lat = extract_coefficients(gf, b);
  CHECK(at(lat, 1, 1) == GaussRat(3));
  CHECK(at(lat, 2, 2) == GaussRat(13));
  CHECK(at(lat, 3, 3) == GaussRat(63));
  CHECK(at(lat, 5, 5) == GaussRat(1683));
  CHECK(at(lat, -1, 3) == GaussRat(0));
  for (long r = 1; r <= 5; ++r)
    for (long s = 1; s <= 5; ++s) CHECK(at(lat, r, s) == at(lat, r - 1, s) + at(lat, r, s - 1) + at(lat, r - 1, s - 1));
  std::vector<long> outside{6, 0};
  CHECK_THROWS_AS(lat.at(outside), Error);
}

TEST_CASE("Chebyshev lattice and constant term") {
  auto gf = load("chebyshev.gf");
  std::vector<long> b{3, 3};
  auto lat = extract_coefficients(gf, b);
  CHECK(at(lat, 2, 2) == GaussRat(4));
  CHECK(at(lat, 0, 2) == GaussRat(-1));
  CHECK(at(lat, 1, 2) == GaussRat(0));
  auto c = load("cuberoot.gf");
  auto lc = extract_coefficients(c, b);
  CHECK(at(lc, 0, 0) == GaussRat(mpq_class(1, 3)));
  std::vector<long> bad{-1, 2};
  CHECK_THROWS_AS(extract_coefficients(gf, bad), Error);
}

TEST_CASE("re-multiplying by H reproduces G inside the box") {
  std::vector<std::string> zw{"z", "w"};
  auto g = poly_parse("2 - z + 3/2*w^2", zw);
  auto h = poly_parse("5/3 - z - 2*w*z + 1/7*z^2*w - I*w", zw);
  auto gf = gf_new(g, h);
  std::vector<long> b{6, 6};
  auto lat = extract_coefficients(gf, b);
  for (long r = 0; r <= 6; ++r) {
    for (long s = 0; s <= 6; ++s) {
      GaussRat sum;
      for (const auto& [e, c] : h.terms()) sum += c * at(lat, r - long(e[0]), s - long(e[1]));
      CHECK(sum == g.coefficient({unsigned(r), unsigned(s)}));
    }
  }
}

TEST_CASE("rolling ray and single coefficient agree with the dense lattice") {
  auto gf = load("cuberoot.gf");
  std::vector<long> b{12, 12};
  auto lat = extract_coefficients(gf, b);
  std::vector<long> dir{1, 1};
  auto ray = ray_coefficients(gf, dir, 12);
  for (long m = 0; m <= 12; ++m) CHECK(ray[size_t(m)] == at(lat, m, m));
  std::vector<long> r{7, 4};
  CHECK(single_coefficient(gf, r) == at(lat, 7, 4));
  auto tri = load("trinomial3.gf");
  std::vector<long> d3{1, 1, 1};
  auto ray3 = ray_coefficients(tri, d3, 3);
  // a_{n,n,n} = (3n)!/(n!^3) 3^{-3n}
  CHECK(ray3[1] == GaussRat(mpq_class(6, 27)));
  CHECK(ray3[2] == GaussRat(mpq_class(90, 729)));
}

TEST_CASE("lattice export") {
  auto gf = load("delannoy.gf");
  std::vector<long> b{1, 1};
  CHECK(extract_coefficients(gf, b).export_text() == "0,0: 1\n0,1: 1\n1,0: 1\n1,1: 3\n");
}

TEST_CASE("log1p") {
  auto s = FormalSeries::x(6, kPrec);
  auto l = ps_log1p(s);
  for (int j = 1; j <= 6; ++j) CHECK(ap::abs(l[j] - ap::Complex(ap::Real(mpq_class(j % 2 ? 1 : -1, j), kPrec))).to_double() < 1e-35);
  CHECK(ps_log1p(FormalSeries::zero(4, kPrec)).valuation(eps_zero(kPrec)) == -1);
  CHECK_THROWS_AS(ps_log1p(series({1.0, 1.0})), Error);
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto r = random_series(rng, 15, true);
    auto back = ps_log1p(ps_exp(r) + cx(-1));
    CHECK(max_diff(back, r) < kTol12);
  }
}

TEST_CASE("kth root") {
  auto y = ps_kth_root(series({0, 0, 1, 0, 0}), 2);
  CHECK(ap::abs(y[1] - cx(1)).to_double() < 1e-35);
  CHECK(ap::abs(y[2]).to_double() < 1e-35);
  auto c = ps_kth_root(series({0, 0, 0, {0, 1}, 0, 0}), 3);
  CHECK(ap::abs(c[1] - cx(std::cos(M_PI / 6), std::sin(M_PI / 6))).to_double() < 1e-15);
  CHECK_THROWS_AS(ps_kth_root(series({0, 1, 1}), 2), Error);
  std::mt19937 rng(5);
  for (int k = 1; k <= 4; ++k) {
    auto r = random_series(rng, 14, false);
    r[0] = r[0] + cx(2);  // keep the leading coefficient away from zero
    std::vector<ap::Complex> v(size_t(k), ap::Complex::zero(kPrec));
    for (const auto& x : r.coeffs()) v.push_back(x);
    FormalSeries s(v);
    auto root = ps_kth_root(s, k);
    CHECK(max_diff(ps_pow(root, unsigned(k)), s) < kTol12);
  }
}

TEST_CASE("compose and revert") {
  auto out = ps_compose(series({0, 0, 1, 0, 0}), series({0, 1, 1, 0, 0}));
  CHECK(max_diff(out, series({0, 0, 1, 2, 1})) < 1e-35);
  auto id = ps_compose(series({1, 2, 3, 4}), FormalSeries::x(3, kPrec));
  CHECK(max_diff(id, series({1, 2, 3, 4})) < 1e-35);
  CHECK_THROWS_AS(ps_compose(series({1, 2}), series({1, 1})), Error);

  auto eta = ps_revert(series({0, 1, 1, 0, 0, 0}));
  CHECK(max_diff(eta, series({0, 1, -1, 2, -5, 14})) < 1e-33);
  auto lin = ps_revert(series({0, {2, 1}, 0}));
  CHECK(ap::abs(lin[1] * cx(2, 1) - cx(1)).to_double() < 1e-35);
  CHECK_THROWS_AS(ps_revert(series({0, 0, 1})), Error);

  std::mt19937 rng(11);
  for (int t = 0; t < 8; ++t) {
    auto y = random_series(rng, 20, true);
    CHECK(max_diff(ps_compose(ps_revert(y), y), FormalSeries::x(20, kPrec)) < kTol12);
    auto a = random_series(rng, 12, false), b = random_series(rng, 12, true), c = random_series(rng, 12, true);
    CHECK(max_diff(ps_compose(ps_compose(a, b), c), ps_compose(a, ps_compose(b, c))) < kTol12);
  }
}
