#include "acsv/lattice.hpp"

#include <functional>
#include <sstream>

#include "acsv/error.hpp"

namespace acsv {

namespace {

const char* kModule = "series-oracle";

// Gaussian integer; only used when the GF has non-real coefficients.
struct GaussInt {
  mpz_class re, im;
  GaussInt& operator+=(const GaussInt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussInt& operator-=(const GaussInt& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
bool is_zero(const GaussInt& v) { return sgn(v.re) == 0 && sgn(v.im) == 0; }

mpz_class from_rat(const GaussRat& c, const mpz_class& scale, mpz_class*) {
  mpq_class v = c.real() * scale;
  return v.get_num();
}
GaussInt from_rat(const GaussRat& c, const mpz_class& scale, GaussInt*) {
  mpq_class re = c.real() * scale, im = c.imag() * scale;
  return {re.get_num(), im.get_num()};
}

mpz_class one(mpz_class*) { return 1; }
GaussInt one(GaussInt*) { return {1, 0}; }

// N / den^power as an exact Gaussian rational.
GaussRat to_value(const mpz_class& n, const mpz_class& den_pow) { return GaussRat(mpq_class(n, den_pow)); }
GaussRat to_value(const GaussInt& n, const GaussInt& den_pow) {
  GaussRat num(mpq_class(n.re), mpq_class(n.im));
  GaussRat den(mpq_class(den_pow.re), mpq_class(den_pow.im));
  return num / den;
}

template <class T>
T power(const T& base, unsigned e) {
  T r = one(static_cast<T*>(nullptr));
  T b = base;
  while (e > 0) {
    if (e & 1U) r = r * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return r;
}

mpz_class common_denominator(const RationalGF& gf) {
  mpz_class l = 1;
  for (const MultiPoly* p : {&gf.numerator(), &gf.denominator()}) {
    for (const auto& [e, c] : p->terms()) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.real().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.imag().get_den_mpz_t());
    }
  }
  return l;
}

// Runs the scaled recurrence N_r = a_r h0^{|r|+1} over the box [0, bounds],
// slab by slab along the last axis, handing each finished slab (values for
// all leading indices at fixed last index s) to `sink`. Leading indices are
// flattened row-major.
template <class T>
void run_recurrence(const RationalGF& gf, const std::vector<unsigned>& bounds,
                    const std::function<void(unsigned s, const std::vector<T>& slab, const T& h0)>& sink) {
  size_t d = gf.dim();
  mpz_class scale = common_denominator(gf);
  T h0 = from_rat(gf.denominator().constant_term(), scale, static_cast<T*>(nullptr));

  std::vector<size_t> stride(d, 1);  // strides of the leading d-1 coordinates
  size_t slab_size = 1;
  for (size_t j = d - 1; j-- > 0;) {
    stride[j] = slab_size;
    slab_size *= bounds[j] + 1;
  }

  struct Shift {
    std::vector<unsigned> m;
    T coeff;  // h_m * h0^{|m|-1}
    size_t offset;
  };
  std::vector<Shift> shifts;
  unsigned deg_last = 0;
  for (const auto& [e, c] : gf.denominator().terms()) {
    unsigned total = 0;
    for (unsigned x : e) total += x;
    if (total == 0) continue;
    T hm = from_rat(c, scale, static_cast<T*>(nullptr));
    size_t off = 0;
    for (size_t j = 0; j + 1 < d; ++j) off += e[j] * stride[j];
    shifts.push_back({e, hm * power(h0, total - 1), off});
    deg_last = std::max(deg_last, e[d - 1]);
  }
  struct Source {
    std::vector<unsigned> r;
    T value;
  };
  std::vector<Source> sources;
  for (const auto& [e, c] : gf.numerator().terms())
    sources.push_back({e, from_rat(c, scale, static_cast<T*>(nullptr))});

  size_t ring = deg_last + 1;
  std::vector<std::vector<T>> slabs(ring, std::vector<T>(slab_size));
  std::vector<unsigned> idx(d, 0);
  for (unsigned s = 0; s <= bounds[d - 1]; ++s) {
    std::vector<T>& cur = slabs[s % ring];
    std::fill(idx.begin(), idx.end(), 0);
    idx[d - 1] = s;
    for (size_t flat = 0; flat < slab_size; ++flat) {
      T acc{};
      for (const auto& src : sources) {
        if (src.r == idx) {
          unsigned total = 0;
          for (unsigned x : idx) total += x;
          acc = src.value * power(h0, total);
        }
      }
      for (const auto& sh : shifts) {
        bool fits = true;
        for (size_t j = 0; j < d; ++j) {
          if (sh.m[j] > idx[j]) {
            fits = false;
            break;
          }
        }
        if (!fits) continue;
        const T& prev = slabs[(s - sh.m[d - 1]) % ring][flat - sh.offset];
        if (is_zero(prev)) continue;
        acc -= sh.coeff * prev;
      }
      cur[flat] = std::move(acc);
      // advance leading multi-index
      for (size_t j = d - 1; j-- > 0;) {
        if (++idx[j] <= bounds[j]) break;
        idx[j] = 0;
      }
    }
    sink(s, cur, h0);
  }
}

std::vector<unsigned> checked_bounds(std::span<const long> bounds, size_t d) {
  if (bounds.size() != d) {
    throw Error(ErrorKind::domain, kModule,
                "index has " + std::to_string(bounds.size()) + " components, GF has " + std::to_string(d));
  }
  std::vector<unsigned> out;
  for (long b : bounds) {
    if (b < 0) throw Error(ErrorKind::domain, kModule, "negative bound component");
    if (b > kMaxIndex) throw Error(ErrorKind::domain, kModule, "bound component exceeds 10^6");
    out.push_back(static_cast<unsigned>(b));
  }
  return out;
}

bool has_complex_coefficients(const RationalGF& gf) {
  return !gf.numerator().has_real_coefficients() || !gf.denominator().has_real_coefficients();
}

// Decodes slab-local values into exact coefficients for the requested
// (index, slot) pairs.
template <class T>
void collect(const RationalGF& gf, const std::vector<unsigned>& bounds,
             const std::function<void(unsigned s, const std::function<GaussRat(size_t flat)>&)>& want) {
  size_t d = gf.dim();
  std::vector<size_t> stride(d, 1);
  size_t slab_size = 1;
  for (size_t j = d - 1; j-- > 0;) {
    stride[j] = slab_size;
    slab_size *= bounds[j] + 1;
  }
  run_recurrence<T>(gf, bounds, [&](unsigned s, const std::vector<T>& slab, const T& h0) {
    auto decode = [&](size_t flat) {
      unsigned total = s;
      size_t rest = flat;
      for (size_t j = 0; j + 1 < d; ++j) {
        total += static_cast<unsigned>(rest / stride[j]);
        rest %= stride[j];
      }
      return to_value(slab[flat], power(h0, total + 1));
    };
    want(s, decode);
  });
}

template <class Fn>
void dispatch(const RationalGF& gf, const std::vector<unsigned>& bounds, Fn&& want) {
  if (has_complex_coefficients(gf)) {
    collect<GaussInt>(gf, bounds, want);
  } else {
    collect<mpz_class>(gf, bounds, want);
  }
}

}  // namespace

CoefficientLattice::CoefficientLattice(std::vector<unsigned> bounds, std::vector<GaussRat> values)
    : bounds_(std::move(bounds)), values_(std::move(values)) {}

GaussRat CoefficientLattice::at(std::span<const long> r) const {
  if (r.size() != bounds_.size()) throw Error(ErrorKind::domain, kModule, "index dimension mismatch");
  size_t flat = 0;
  for (size_t j = 0; j < r.size(); ++j) {
    if (r[j] < 0) return GaussRat();
    if (r[j] > static_cast<long>(bounds_[j])) throw Error(ErrorKind::domain, kModule, "index outside the lattice");
    flat = flat * (bounds_[j] + 1) + static_cast<size_t>(r[j]);
  }
  return values_[flat];
}

std::string CoefficientLattice::export_text() const {
  std::ostringstream out;
  std::vector<unsigned> idx(bounds_.size(), 0);
  for (const auto& v : values_) {
    for (size_t j = 0; j < idx.size(); ++j) out << (j ? "," : "") << idx[j];
    out << ": " << v.to_string() << "\n";
    for (size_t j = idx.size(); j-- > 0;) {
      if (++idx[j] <= bounds_[j]) break;
      idx[j] = 0;
    }
  }
  return out.str();
}

CoefficientLattice extract_coefficients(const RationalGF& gf, std::span<const long> bounds) {
  auto b = checked_bounds(bounds, gf.dim());
  size_t total = 1;
  for (unsigned x : b) {
    total *= x + 1;
    if (total > 50'000'000) throw Error(ErrorKind::domain, kModule, "lattice too large for dense storage");
  }
  size_t d = gf.dim();
  size_t slab_size = total / (b[d - 1] + 1);
  std::vector<GaussRat> values(total);
  // Output is row-major with the last index fastest; slabs hold the leading
  // indices for one value of the last.
  dispatch(gf, b, [&](unsigned s, const std::function<GaussRat(size_t)>& decode) {
    for (size_t flat = 0; flat < slab_size; ++flat) values[flat * (b[d - 1] + 1) + s] = decode(flat);
  });
  return CoefficientLattice(std::move(b), std::move(values));
}

std::vector<GaussRat> ray_coefficients(const RationalGF& gf, std::span<const long> dir, long m_max) {
  size_t d = gf.dim();
  if (dir.size() != d) throw Error(ErrorKind::domain, kModule, "direction dimension mismatch");
  if (m_max < 0) throw Error(ErrorKind::domain, kModule, "negative ray length");
  std::vector<long> box(d);
  for (size_t j = 0; j < d; ++j) {
    if (dir[j] < 0) throw Error(ErrorKind::domain, kModule, "ray direction must be nonnegative");
    box[j] = dir[j] * m_max;
  }
  auto b = checked_bounds(box, d);
  std::vector<size_t> stride(d, 1);
  size_t slab_size = 1;
  for (size_t j = d - 1; j-- > 0;) {
    stride[j] = slab_size;
    slab_size *= b[j] + 1;
  }
  std::vector<GaussRat> out(static_cast<size_t>(m_max) + 1);
  dispatch(gf, b, [&](unsigned s, const std::function<GaussRat(size_t)>& decode) {
    for (long m = 0; m <= m_max; ++m) {
      if (dir[d - 1] * m != static_cast<long>(s)) continue;
      size_t flat = 0;
      for (size_t j = 0; j + 1 < d; ++j) flat += static_cast<size_t>(dir[j] * m) * stride[j];
      out[static_cast<size_t>(m)] = decode(flat);
    }
  });
  return out;
}

GaussRat single_coefficient(const RationalGF& gf, std::span<const long> r) {
  auto b = checked_bounds(r, gf.dim());
  size_t d = gf.dim();
  GaussRat out;
  dispatch(gf, b, [&](unsigned s, const std::function<GaussRat(size_t)>& decode) {
    if (s != b[d - 1]) return;
    size_t flat = 0, stride = 1;
    for (size_t j = d - 1; j-- > 0;) {
      flat += b[j] * stride;
      stride *= b[j] + 1;
    }
    out = decode(flat);
  });
  return out;
}

}  // namespace acsv
