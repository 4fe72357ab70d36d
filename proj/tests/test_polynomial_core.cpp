#include <doctest.h>

#include <random>

#include "acsv/error.hpp"
#include "acsv/gf.hpp"
#include "acsv/multipoly.hpp"

using namespace acsv;

namespace {
const std::vector<std::string> kZW{"z", "w"};

GaussRat q(long p, long d = 1) { return GaussRat(mpq_class(p, d)); }

std::vector<ap::Complex> point(std::initializer_list<std::complex<double>> xs, ap::Precision prec = 128) {
  std::vector<ap::Complex> out;
  for (auto x : xs) out.emplace_back(x, prec);
  return out;
}

MultiPoly random_poly(std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 5);
  std::vector<std::pair<Exponents, GaussRat>> terms;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j)
      terms.push_back({{unsigned(i), unsigned(j)}, q(coef(rng), den(rng))});
  return MultiPoly::from_terms(kZW, terms);
}
}  // namespace

TEST_CASE("parse Delannoy denominator") {
  MultiPoly h = poly_parse("1 - z - w - z*w", kZW);
  CHECK(h.terms().size() == 4);
  CHECK(h.coefficient({0, 0}) == q(1));
  CHECK(h.coefficient({1, 0}) == q(-1));
  CHECK(h.coefficient({0, 1}) == q(-1));
  CHECK(h.coefficient({1, 1}) == q(-1));
}

TEST_CASE("parse zero and implicit multiplication") {
  CHECK(poly_parse("0", kZW).is_zero());
  MultiPoly h = poly_parse("3 - 3z - w + z^2", kZW);
  CHECK(h.terms().size() == 4);
  CHECK(h.coefficient({0, 0}) == q(3));
  CHECK(h.coefficient({1, 0}) == q(-3));
  CHECK(h.coefficient({0, 1}) == q(-1));
  CHECK(h.coefficient({2, 0}) == q(1));
  CHECK(poly_parse("z - z", kZW).is_zero());
}

TEST_CASE("parse rationals, powers and the imaginary unit") {
  MultiPoly p = poly_parse("1/2*z + (1+2*I)*w + (z+w)^2 - w/3", kZW);
  CHECK(p.coefficient({1, 0}) == q(1, 2));
  CHECK(p.coefficient({0, 1}) == GaussRat(mpq_class(2, 3), mpq_class(2)));
  CHECK(p.coefficient({1, 1}) == q(2));
  CHECK_FALSE(p.has_real_coefficients());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(poly_parse("z^-1", kZW), Error);
  try {
    poly_parse("1 + z^-2", kZW);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("monomial") != std::string::npos);
  }
  CHECK_THROWS_AS(poly_parse("1 + x", kZW), Error);
  CHECK_THROWS_AS(poly_parse("1 + (z", kZW), Error);
  CHECK_THROWS_AS(poly_parse("1/0", kZW), Error);
  CHECK_THROWS_AS(MultiPoly::from_terms(kZW, {{{1, 2, 3}, q(1)}}), Error);
  CHECK_THROWS_AS(GaussRat::parse_rational("1/x"), Error);
  CHECK(GaussRat::parse_rational("-6/4") == mpq_class(-3, 2));
}

TEST_CASE("evaluation") {
  MultiPoly h = poly_parse("1 - z - w - z*w", kZW);
  CHECK(h.eval(point({0.0, 0.0})).real() == ap::Real(1));
  ap::Real s = ap::sqrt(ap::Real(2.0, 256)) - ap::Real(1);
  std::vector<ap::Complex> pt{ap::Complex(s), ap::Complex(s)};
  CHECK(ap::abs(h.eval(pt)) < ap::tolerance(256, 8));
  CHECK(h.eval(pt).precision() == 256);
  MultiPoly c = poly_parse("3 - 3z - w + z^2", kZW);
  CHECK(c.eval(point({1.0, 1.0})).is_zero());
  CHECK_THROWS_AS(h.eval(point({1.0})), Error);
}

TEST_CASE("partial derivatives") {
  MultiPoly h = poly_parse("1 - z - w - z*w", kZW);
  CHECK(poly_partial(h, 0) == poly_parse("-1 - w", kZW));
  CHECK(poly_partial(poly_parse("7", kZW), 1).is_zero());
  CHECK(poly_partial(poly_parse("1 - 2z*w + w^2", kZW), 1) == poly_parse("-2z + 2w", kZW));
  CHECK_THROWS_AS(poly_partial(h, 2), Error);
}

TEST_CASE("linearity, multiplicativity and print round trip on random polynomials") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly p = random_poly(rng, 3), r = random_poly(rng, 2);
    GaussRat a = q(3, 7), b = q(-5, 2);
    for (size_t v = 0; v < 2; ++v)
      CHECK(poly_partial(a * p + b * r, v) == a * poly_partial(p, v) + b * poly_partial(r, v));
    auto x = point({{0.3, -0.7}, {1.1, 0.4}});
    ap::Complex lhs = (p * r).eval(x), rhs = p.eval(x) * r.eval(x);
    CHECK(ap::abs(lhs - rhs) <= ap::abs(rhs) * ap::tolerance(128, 10));
    CHECK(poly_parse(p.to_string(), kZW) == p);
  }
  MultiPoly g = poly_parse("(1/2 - I)*z^2 - 3*I*w + I", kZW);
  CHECK(poly_parse(g.to_string(), kZW) == g);
}

TEST_CASE("permuted swaps variables") {
  MultiPoly c = poly_parse("3 - 3z - w + z^2", kZW);
  std::vector<size_t> perm{1, 0};
  MultiPoly t = c.permuted(perm);
  CHECK(t.vars() == std::vector<std::string>{"w", "z"});
  CHECK(t.coefficient({0, 2}) == q(1));
}

TEST_CASE("gf_new validation") {
  auto one = MultiPoly::constant(kZW, q(1));
  CHECK_NOTHROW(gf_new(one, poly_parse("1 - z - w - z*w", kZW)));
  CHECK_THROWS_AS(gf_new(one, poly_parse("z + w", kZW)), Error);
  // Cleared form of a Laurent GF with a pole at the origin.
  std::vector<std::string> xyz{"x", "y", "z"};
  auto g = poly_parse("x*y*z/2", xyz);
  auto h = poly_parse("x*y - (x^2*y + y + x*y^2 + x)*z/2 + x*y*z^2", xyz);
  try {
    gf_new(g, h);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
    CHECK(std::string(e.what()).find("origin") != std::string::npos);
  }
}

TEST_CASE("GF documents") {
  auto gf = gf_from_json_text(R"({"vars":["z","w"],"numerator":[{"coeff":"1","exps":[0,0]}],
      "denominator":[{"coeff":"1","exps":[0,0]},{"coeff":"-2","exps":[1,1]},{"coeff":"1","exps":[0,2]}]})");
  CHECK(gf.denominator() == poly_parse("1 - 2z*w + w^2", kZW));
  auto back = gf_from_json_text(gf_to_json_text(gf));
  CHECK(back.denominator() == gf.denominator());
  CHECK_THROWS_AS(gf_from_json_text(R"({"vars":["z"],"numerator":"1","denominator":[{"coeff":"1","exps":[-1]}]})"),
                  Error);
  CHECK_THROWS_AS(gf_from_json_text(R"({"vars":["z"],"numerator":"1"})"), Error);
  CHECK_THROWS_AS(gf_from_json_text("not json"), Error);
  auto c = gf_read_file(ACSV_DATA_DIR "/cuberoot.gf");
  CHECK(c.denominator() == poly_parse("3 - 3z - w + z^2", kZW));
}
