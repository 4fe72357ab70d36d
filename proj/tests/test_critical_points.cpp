#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "acsv/critical.hpp"
#include "acsv/error.hpp"
#include "acsv/random_gf.hpp"

using namespace acsv;

namespace {
constexpr ap::Precision kPrec = 128;

RationalGF load(const char* name) { return gf_read_file(std::string(ACSV_DATA_DIR) + "/" + name); }

RationalGF from_text(const std::string& g, const std::string& h, const std::vector<std::string>& vars) {
  return gf_new(poly_parse(g, vars), poly_parse(h, vars));
}

Point pt(std::initializer_list<std::complex<double>> cs) {
  Point p;
  for (auto c : cs) p.emplace_back(c, kPrec);
  return p;
}

Point exact_pt(std::initializer_list<ap::Complex> cs) { return Point(cs); }

ap::Real rsqrt(long v) { return ap::sqrt(ap::Real(mpz_class(v), kPrec)); }

bool near(const Point& a, const Point& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t j = 0; j < a.size(); ++j)
    if (ap::abs(a[j] - b[j]).to_double() > tol) return false;
  return true;
}

bool contains(const std::vector<Point>& pts, const Point& p, double tol) {
  for (const auto& q : pts)
    if (near(q, p, tol)) return true;
  return false;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::parse;
}
}  // namespace

TEST_CASE("direction normalization") {
  CHECK(Direction::parse("4,6").to_string() == "2,3");
  CHECK(Direction::parse("1/2,1").to_string() == "1,2");
  CHECK(Direction::parse("8,6").ratio(0, 1) == mpq_class(4, 3));
  CHECK_THROWS_AS(Direction::parse("0,0"), Error);
  CHECK_THROWS_AS(Direction::parse("1,x"), Error);
}

TEST_CASE("critical system") {
  auto del = load("delannoy.gf");
  auto sys = critical_system(del, Direction::parse("1,1"));
  REQUIRE(sys.size() == 2);
  CHECK(sys[0] == del.denominator());
  CHECK(sys[1] == poly_parse("w - z", {"z", "w"}));

  auto cube = load("cuberoot.gf");
  auto csys = critical_system(cube, Direction::parse("1,1"));
  CHECK(csys[0] == poly_parse("3 - 3z - w + z^2", {"z", "w"}));
  CHECK(csys[1] == poly_parse("z*(2z - 3) + w", {"z", "w"}));

  auto uni = from_text("1", "1 - 2x", {"x"});
  CHECK(critical_system(uni, Direction::parse("1")).size() == 1);
}

TEST_CASE("solve_critical_2d on the fixtures") {
  ap::Real s2 = rsqrt(2);
  ap::Real one(1.0, kPrec);
  auto del = solve_critical_2d(load("delannoy.gf"), Direction::parse("1,1"));
  CHECK(contains(del, exact_pt({ap::Complex(s2 - one), ap::Complex(s2 - one)}), 1e-30));
  for (const auto& p : del) CHECK(ap::abs(load("delannoy.gf").denominator().eval(p)) < ap::tolerance(kPrec, 8));

  auto cube = solve_critical_2d(load("cuberoot.gf"), Direction::parse("1,1"));
  CHECK(contains(cube, pt({1, 1}), 1e-30));

  ap::Real b = one / rsqrt(3);
  auto cheb = solve_critical_2d(load("chebyshev.gf"), Direction::parse("1,2"));
  CHECK(contains(cheb, exact_pt({ap::Complex(ap::Real::zero(kPrec), -b), ap::Complex(ap::Real::zero(kPrec), b)}), 1e-30));
  CHECK(contains(cheb, exact_pt({ap::Complex(ap::Real::zero(kPrec), b), ap::Complex(ap::Real::zero(kPrec), -b)}), 1e-30));
}

TEST_CASE("Delannoy closed form over random directions") {
  auto del = load("delannoy.gf");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> c(1, 25);
  int tested = 0;
  while (tested < 20) {
    long r = c(rng), s = c(rng);
    mpq_class ratio(r, s);
    ratio.canonicalize();
    if (ratio < mpq_class(1, 5) || ratio > 5) continue;
    ++tested;
    auto pts = solve_critical_2d(del, Direction::from_ints({r, s}));
    ap::Real rr(mpz_class(r), kPrec), ss(mpz_class(s), kPrec);
    ap::Real root = ap::sqrt(rr * rr + ss * ss);
    Point expect{ap::Complex((root - ss) / rr), ap::Complex((root - rr) / ss)};
    CAPTURE(r);
    CAPTURE(s);
    CHECK(contains(pts, expect, std::ldexp(1.0, -(static_cast<int>(kPrec) - 16))));
  }
}

TEST_CASE("check_simple_pole and dir_of") {
  auto del = load("delannoy.gf");
  ap::Real d = rsqrt(2) - ap::Real(1.0, kPrec);
  Point p{ap::Complex(d), ap::Complex(d)};
  auto pc = check_simple_pole(del, p);
  CHECK(pc.simple);
  auto info = dir_of(del, p, pc.axis);
  CHECK(ap::abs(info.vector[0]).to_double() == doctest::Approx(0.5857864).epsilon(1e-7));
  CHECK(info.ratios_real_nonnegative);
  CHECK(ap::abs(info.ratios[0] - info.ratios[1]).to_double() < 1e-30);

  auto rep = load("repeated.gf");
  CHECK_FALSE(check_simple_pole(rep, pt({0.5, 0.5})).simple);

  auto cube = load("cuberoot.gf");
  auto cc = check_simple_pole(cube, pt({1, 1}));
  CHECK(cc.simple);
  CHECK(cc.axis == 1);

  // z = 1/2, w = 1/3 lies on the Delannoy variety with direction 4:3.
  Point q{ap::Complex(ap::Real(mpq_class(1, 2), kPrec)), ap::Complex(ap::Real(mpq_class(1, 3), kPrec))};
  auto qi = dir_of(del, q, 1);
  CHECK(ap::abs(qi.ratios[0] - ap::Complex(ap::Real(mpq_class(4, 3), kPrec))).to_double() < 1e-30);

  auto cheb = load("chebyshev.gf");
  ap::Real b = ap::Real(1.0, kPrec) / rsqrt(3);
  Point cp{ap::Complex(ap::Real::zero(kPrec), -b), ap::Complex(ap::Real::zero(kPrec), b)};
  auto ci = dir_of(cheb, cp, 1);
  CHECK(ci.ratios_real_nonnegative);
  CHECK(ap::abs(ci.ratios[0] - ap::Complex(ap::Real(mpq_class(1, 2), kPrec))).to_double() < 1e-30);

  // (0, 1) lies on the Delannoy variety but z H_z = 0 there.
  CHECK_THROWS_AS(dir_of(del, pt({0, 1}), 0), Error);
}

TEST_CASE("minimality classification") {
  auto del = load("delannoy.gf");
  auto dp = find_critical_points(del, Direction::parse("1,1"));
  int strict = 0;
  for (const auto& p : dp)
    if (p.minimality == Minimality::strict) ++strict;
  CHECK(strict == 1);

  auto cheb = contributing_point(load("chebyshev.gf"), Direction::parse("1,2"));
  CHECK(cheb.minimality == Minimality::finitely_minimal);
  REQUIRE(cheb.siblings.size() == 1);
  CHECK(ap::abs(cheb.siblings[0][0] + cheb.coords[0]).to_double() < 1e-30);
  CHECK(ap::abs(cheb.siblings[0][1] + cheb.coords[1]).to_double() < 1e-30);

  auto cube = contributing_point(load("cuberoot.gf"), Direction::parse("1,1"));
  CHECK(cube.minimality == Minimality::strict);
  CHECK(near(cube.coords, pt({1, 1}), 1e-30));

  MinimalityOptions tiny;
  tiny.grid = 8;
  CHECK(kind_of([&] { classify_minimality(del, dp[0].coords, Direction::parse("1,1"), 0, tiny); }) ==
        ErrorKind::domain);
}

TEST_CASE("classification is grid stable") {
  struct Case {
    const char* file;
    const char* dir;
  };
  for (auto c : {Case{"delannoy.gf", "1,1"}, Case{"delannoy.gf", "4,3"}, Case{"cuberoot.gf", "1,1"},
                 Case{"chebyshev.gf", "1,2"}}) {
    auto gf = load(c.file);
    SearchOptions fine;
    fine.minimality.grid = 1440;
    auto a = find_critical_points(gf, Direction::parse(c.dir));
    auto b = find_critical_points(gf, Direction::parse(c.dir), fine);
    CAPTURE(c.file);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].minimality == b[i].minimality);
      CHECK(a[i].siblings.size() == b[i].siblings.size());
    }
  }
}

TEST_CASE("out-of-scope denominators") {
  auto rep = load("repeated.gf");
  CHECK(kind_of([&] { contributing_point(rep, Direction::parse("1,1")); }) == ErrorKind::out_of_scope);
  auto product = from_text("1", "(1-z)*(1-w)*(1-u)", {"z", "w", "u"});
  CHECK_FALSE(check_simple_pole(product, pt({1, 1, 1})).simple);
}

TEST_CASE("critical points in three variables") {
  auto tri = load("trinomial3.gf");
  auto pts = solve_critical_nd(tri, Direction::parse("1,1,1"));
  CHECK(contains(pts, pt({1, 1, 1}), 1e-30));
  auto cp = contributing_point(tri, Direction::parse("1,1,1"));
  CHECK(cp.minimality == Minimality::strict);
  CHECK(cp.pole_simple);

  // Separable system: the Delannoy slice times the line u = 1.
  auto sep = from_text("1", "(1 - z - w - z*w)*(1 - u)", {"z", "w", "u"});
  ap::Real d = rsqrt(2) - ap::Real(1.0, kPrec);
  auto sp = solve_critical_nd(sep, Direction::parse("1,1,1"));
  CHECK(contains(sp, exact_pt({ap::Complex(d), ap::Complex(d), ap::Complex(ap::Real(1.0, kPrec))}), 1e-20));

  // z H_z - u H_u / 2 = 0 forces z w u^2 = 0, incompatible with H = 0.
  auto none = from_text("1", "1 + z*w*u^2", {"z", "w", "u"});
  CHECK(kind_of([&] { solve_critical_nd(none, Direction::parse("1,1,1")); }) == ErrorKind::numerical);
}

TEST_CASE("random positive GFs have strict positive minimal points") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    auto gf = random_positive_gf(rng);
    auto dir = random_direction(rng);
    auto cp = contributing_point(gf, dir);
    CAPTURE(gf.denominator().to_string());
    CHECK(cp.minimality == Minimality::strict);
    for (const auto& c : cp.coords) {
      CHECK(c.real() > 0);
      CHECK(ap::abs(c.imag()).to_double() < 1e-30);
    }
    auto info = dir_of(gf, cp.coords, cp.axis);
    CHECK(info.worst_imag.to_double() < 1e-20);
  }
}
