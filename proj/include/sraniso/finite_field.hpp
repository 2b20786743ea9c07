#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sraniso/error.hpp"

namespace sraniso {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in the prime field GF(p) on residues 0..p-1.
struct PrimeField {
  std::uint32_t p = 2;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + p - b) % p); }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>(std::uint64_t{a} * b % p); }
  std::uint32_t inv(std::uint32_t a) const {
    if (a % p == 0) fail(ErrorKind::DivByZero, "inverse of zero in GF(p)");
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
      long long q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
  }
  std::uint32_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace detail {

// Dense polynomials over GF(p), coefficient i is the x^i coefficient.
using GfpPoly = std::vector<std::uint32_t>;

inline void trim(GfpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline GfpPoly poly_mod(GfpPoly a, const GfpPoly& m, const PrimeField& f) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = f.inv(m.back());
  while (a.size() > dm) {
    const std::uint32_t c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return a;
}

inline GfpPoly poly_mulmod(const GfpPoly& a, const GfpPoly& b, const GfpPoly& m, const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  GfpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  return poly_mod(c, m, f);
}

inline GfpPoly poly_gcd(GfpPoly a, GfpPoly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(a, b, f);
    std::swap(a, b);
  }
  return a;
}

// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
inline bool is_irreducible(const GfpPoly& m, const PrimeField& f) {
  const int w = static_cast<int>(m.size()) - 1;
  GfpPoly xp = {0, 1};  // x^(p^i) mod m
  for (int i = 1; 2 * i <= w; ++i) {
    // Raise to the p-th power by repeated multiplication.
    GfpPoly r = {1};
    for (std::uint32_t k = 0; k < f.p; ++k) r = poly_mulmod(r, xp, m, f);
    xp = r;
    GfpPoly g = xp;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = f.sub(g[1], 1);
    trim(g);
    GfpPoly d = poly_gcd(m, g, f);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/**
 * \brief The finite field GF(p^w) as GF(p)[x]/(modulus).
 *
 * Elements are packed into 64-bit words: bit i holds the x^i coefficient
 * when p = 2, base-p digits otherwise. The modulus is fixed for a given
 * (p, w): x^32+x^7+x^3+x^2+1 for GF(2^32), and otherwise the first monic
 * irreducible polynomial in the enumeration order of its lower coefficients.
 */
class FiniteField {
 public:
  using Elem = std::uint64_t;

  FiniteField() : FiniteField(2, 32) {}

  FiniteField(std::uint32_t p, int w) : base_{p}, w_(w) {
    if (!is_prime(p)) fail(ErrorKind::ConfigError, "characteristic must be prime");
    if (w < 1) fail(ErrorKind::ConfigError, "extension degree must be positive");
    if (p == 2 && w > 63) fail(ErrorKind::ConfigError, "GF(2^w) supports w <= 63");
    if (p != 2) {
      long double size = 1;
      for (int i = 0; i < w; ++i) size *= p;
      if (size >= 4.0e18L) fail(ErrorKind::ConfigError, "p^w must stay below 4e18");
      pow_.assign(w + 1, 1);
      for (int i = 1; i <= w; ++i) pow_[i] = pow_[i - 1] * p;
    }
    choose_modulus();
  }

  std::uint32_t characteristic() const { return base_.p; }
  int degree() const { return w_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::string modulus_string() const {
    std::string s;
    for (int i = w_; i >= 0; --i) {
      const std::uint32_t c = modulus_[i];
      if (c == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0 || c != 1) s += std::to_string(c);
      if (i > 0 && c != 1) s += "*";
      if (i >= 1) s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem from_int(long long v) const { return base_.from_int(v); }

  /// Maps an arbitrary 64-bit word to an element, roughly uniformly.
  Elem from_bits(std::uint64_t bits) const {
    if (base_.p == 2) return w_ == 64 ? bits : bits & ((std::uint64_t{1} << w_) - 1);
    return bits % pow_[w_];
  }

  Elem add(Elem a, Elem b) const {
    if (base_.p == 2) return a ^ b;
    Elem r = 0;
    for (int i = 0; i < w_; ++i) r += base_.add(digit(a, i), digit(b, i)) * pow_[i];
    return r;
  }
  Elem neg(Elem a) const {
    if (base_.p == 2) return a;
    Elem r = 0;
    for (int i = 0; i < w_; ++i) r += base_.neg(digit(a, i)) * pow_[i];
    return r;
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (base_.p == 2) {
      Elem r = 0;
      const Elem top = Elem{1} << (w_ - 1);
      for (int i = w_ - 1; i >= 0; --i) {
        const bool carry = r & top;
        r = (r << 1) & mask_;
        if (carry) r ^= low_bits_;
        if ((b >> i) & 1) r ^= a;
      }
      return r;
    }
    detail::GfpPoly x(w_), y(w_);
    for (int i = 0; i < w_; ++i) {
      x[i] = digit(a, i);
      y[i] = digit(b, i);
    }
    auto z = detail::poly_mulmod(x, y, modulus_, base_);
    Elem r = 0;
    for (std::size_t i = 0; i < z.size(); ++i) r += z[i] * pow_[i];
    return r;
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::DivByZero, "inverse of zero in GF(p^w)");
    if (base_.p == 2) {
      // a^(2^w - 2) is the product of a^(2^i) for i = 1..w-1.
      Elem r = one(), sq = a;
      for (int i = 1; i < w_; ++i) {
        sq = mul(sq, sq);
        r = mul(r, sq);
      }
      return r;
    }
    return pow(a, pow_[w_] - 2);
  }

  Elem scalar(std::uint32_t c) const { return base_.from_int(c); }

 private:
  std::uint32_t digit(Elem a, int i) const { return static_cast<std::uint32_t>((a / pow_[i]) % base_.p); }

  void choose_modulus() {
    if (base_.p == 2 && w_ == 32) {
      modulus_.assign(33, 0);
      modulus_[32] = modulus_[7] = modulus_[3] = modulus_[2] = modulus_[0] = 1;
    } else {
      // Enumerate the lower coefficients as a base-p counter, constant term first.
      modulus_.assign(w_ + 1, 0);
      modulus_[w_] = 1;
      while (true) {
        if (modulus_[0] != 0 && detail::is_irreducible(modulus_, base_)) break;
        int i = 0;
        while (i < w_ && ++modulus_[i] == base_.p) modulus_[i++] = 0;
        if (i == w_) fail(ErrorKind::ConfigError, "no irreducible polynomial found");
      }
    }
    if (base_.p == 2) {
      mask_ = w_ == 64 ? ~Elem{0} : (Elem{1} << w_) - 1;
      low_bits_ = 0;
      for (int i = 0; i < w_; ++i)
        if (modulus_[i]) low_bits_ |= Elem{1} << i;
    }
  }

  PrimeField base_;
  int w_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint64_t> pow_;
  Elem mask_ = 0;
  Elem low_bits_ = 0;
};

}  // namespace sraniso
