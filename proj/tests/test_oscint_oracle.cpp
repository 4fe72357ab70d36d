#include <doctest.h>

#include <cmath>
#include <functional>

#include "acsv/asymptotics.hpp"
#include "acsv/error.hpp"
#include "acsv/lattice.hpp"
#include "acsv/oscint.hpp"

using namespace acsv;

namespace {
constexpr ap::Precision kPrec = 128;

RationalGF load(const char* name) { return gf_read_file(std::string(ACSV_DATA_DIR) + "/" + name); }

ap::Complex cx(double re, double im = 0) { return ap::Complex({re, im}, kPrec); }

// z^r a_r from the exact oracle.
ap::Complex normalized_coefficient(const RationalGF& gf, const CriticalPoint& cp, const std::vector<long>& r) {
  ap::Complex v = single_coefficient(gf, r).to_complex(kPrec);
  for (size_t j = 0; j < r.size(); ++j) v = v * ap::pow(cp.coords[j], r[j]);
  return v;
}

double rel(const ap::Complex& a, const ap::Complex& b) { return (ap::abs(a - b) / ap::abs(b)).to_double(); }

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

TEST_CASE("Xi quadrature against the exact oracle") {
  auto del = load("delannoy.gf");
  auto cp = contributing_point(del, Direction::parse("1,1"));
  std::vector<long> r50{50, 50}, r100{100, 100};
  double e50 = rel(xi_quadrature(del, cp, r50), normalized_coefficient(del, cp, r50));
  double e100 = rel(xi_quadrature(del, cp, r100), normalized_coefficient(del, cp, r100));
  CHECK(e50 < 1e-6);
  CHECK(e100 < e50 / 10);

  QuadratureSpec narrow;
  narrow.halfwidth = std::numbers::pi / 4;
  CHECK(rel(xi_quadrature(del, cp, r100, narrow), xi_quadrature(del, cp, r100)) < 1e-8);

  auto cube = load("cuberoot.gf");
  auto cc = contributing_point(cube, Direction::parse("1,1"));
  std::vector<long> r200{200, 200};
  CHECK(rel(xi_quadrature(cube, cc, r200), normalized_coefficient(cube, cc, r200)) < 1e-3);

  std::vector<long> r0{5, 0};
  CHECK(kind_of([&] { xi_quadrature(del, cp, r0); }) == ErrorKind::domain);
  QuadratureSpec bad;
  bad.halfwidth = 4;
  CHECK(kind_of([&] { xi_quadrature(del, cp, r50, bad); }) == ErrorKind::domain);
  bad = {};
  bad.panels = 4;
  CHECK(kind_of([&] { xi_quadrature(del, cp, r50, bad); }) == ErrorKind::domain);
}

TEST_CASE("Xi quadrature in three variables") {
  auto tri = load("trinomial3.gf");
  auto cp = contributing_point(tri, Direction::parse("1,1,1"));
  std::vector<long> r{20, 20, 20};
  CHECK(rel(xi_quadrature(tri, cp, r), normalized_coefficient(tri, cp, r)) < 1e-6);
}

TEST_CASE("Xi against the expansion") {
  struct Case {
    const char* file;
    int terms;
  };
  for (auto c : {Case{"delannoy.gf", 1}, Case{"delannoy.gf", 3}, Case{"cuberoot.gf", 1}, Case{"cuberoot.gf", 2}}) {
    auto gf = load(c.file);
    auto cp = contributing_point(gf, Direction::parse("1,1"));
    auto e = expand_2d(gf, cp, c.terms);
    // first omitted nonzero order relative to the leading one
    int next = c.terms;
    while (next < c.terms + 4) {
      auto probe = expand_2d(gf, cp, next + 1);
      if (ap::abs(probe.terms[static_cast<size_t>(next)].coeff).to_double() > 1e-30) break;
      ++next;
    }
    double predicted = std::pow(2.0, -static_cast<double>(next - e.l0) / e.k);
    double prev = 0;
    for (long n : {50L, 100L, 200L}) {
      std::vector<long> r{n, n};
      ap::Complex xi = xi_quadrature(gf, cp, r);
      ap::Complex zr = ap::pow(cp.coords[0], n) * ap::pow(cp.coords[1], n);
      double err = rel(evaluate_expansion(e, r, c.terms) * zr, xi);
      CAPTURE(c.file);
      CAPTURE(c.terms);
      CAPTURE(n);
      if (prev > 0) {
        CHECK(err < prev);
        CHECK(err / prev == doctest::Approx(predicted).epsilon(0.25));
      }
      prev = err;
    }
  }
}

TEST_CASE("model integrals") {
  ap::Complex one = cx(1), i = cx(0, 1);
  CHECK(model_integral(2, 0, one, 100, false).real().to_double() == doctest::Approx(0.0886227).epsilon(1e-7));
  CHECK(ap::abs(model_integral(2, 1, one, 100, true)).to_double() < 1e-30);
  // Gaussian moments exactly: integral x^2 e^{-x^2} over R = sqrt(pi)/2.
  CHECK(ap::abs(model_integral(2, 2, one, 1, true) - ap::Complex(ap::sqrt(ap::Real::pi(kPrec)) / ap::Real(2))).to_double() <
        1e-24);
  CHECK(kind_of([&] { model_integral(2, 0, cx(-1), 10, false); }) == ErrorKind::domain);
  CHECK(kind_of([&] { model_integral(3, 0, one, 10, true); }) == ErrorKind::domain);
  CHECK(kind_of([&] { model_integral(2, 0, one, -1, false); }) == ErrorKind::domain);

  // Purely oscillatory k = 3: the windowed integral reproduces the
  // two-sided constant for both l = 0 and l = 1.
  for (int l : {0, 1}) {
    CHECK(rel(model_integral(3, l, i, 1e2, false),
              model_expansion(3, FormalSeries(std::vector<ap::Complex>(static_cast<size_t>(l) + 1, one)), i, 1e2,
                              false, l + 1) -
                  (l == 1 ? model_expansion(3, FormalSeries({one}), i, 1e2, false, 1) : cx(0))) < 1e-12);
    std::vector<ap::Complex> amp(static_cast<size_t>(l) + 1, cx(0));
    amp[static_cast<size_t>(l)] = one;
    auto exact = model_expansion(3, FormalSeries(amp), i, 1e3, true, l + 1);
    CHECK(rel(model_integral(3, l, i, 1e3, true), exact) < 1e-12);
  }
}

TEST_CASE("Watson check") {
  // amplitude x^l (1 + x + x^2/2 + x^3/6 + x^4/24)
  auto amplitude = [](int l) {
    std::vector<ap::Complex> c(static_cast<size_t>(l) + 5, cx(0));
    double f = 1;
    for (int j = 0; j < 5; ++j) {
      if (j > 0) f *= j;
      c[static_cast<size_t>(l + j)] = cx(1 / f);
    }
    return FormalSeries(c);
  };
  struct Mode {
    ap::Complex c;
    bool two_sided;
  };
  for (int k = 2; k <= 4; ++k) {
    // The purely oscillatory one-sided case is covered by "model integrals";
    // here it would only repeat thousands of oscillations per run.
    std::vector<Mode> modes{{cx(1), false}, {cx(0.6, 0.8), false}};
    if (k % 2 == 0) modes.push_back({cx(1), true});
    else modes.push_back({cx(0, 1), true});
    for (int l = 0; l <= 3; ++l) {
      for (const auto& m : modes) {
        FormalSeries amp = amplitude(l);
        // first two nonzero expansion terms
        int count = l + 1, found = 0;
        for (; count <= l + 6 && found < 2; ++count) {
          auto all = model_expansion(k, amp, m.c, 1, m.two_sided, count);
          auto fewer = count > l + 1 ? model_expansion(k, amp, m.c, 1, m.two_sided, count - 1) : cx(0);
          if (ap::abs(all - fewer).to_double() > 1e-30) ++found;
        }
        --count;
        double prev = 0;
        for (double lambda : {1e2, 1e3, 1e4}) {
          ap::Complex num = model_integral(k, amp, m.c, lambda, m.two_sided, 1e-20);
          double err = rel(model_expansion(k, amp, m.c, lambda, m.two_sided, count), num);
          CAPTURE(k);
          CAPTURE(l);
          CAPTURE(m.two_sided);
          CAPTURE(m.c.to_std());
          CAPTURE(lambda);
          // Below 1e-15 the two terms are exact up to quadrature error.
          if (prev > 0) CHECK(err < std::max(prev * std::pow(10.0, -1.0 / k), 1e-15));
          prev = err;
        }
      }
    }
  }
}
