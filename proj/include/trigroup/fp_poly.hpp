#pragma once

// Univariate polynomials over a prime field F_p and their complete
// factorization: squarefree decomposition, distinct-degree splitting, then
// Cantor-Zassenhaus equal-degree splitting (trace map when p = 2).

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trigroup/poly.hpp"

namespace trigroup {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

/// Polynomial over F_p, lowest degree first, no trailing zeros.
class FpPoly {
 public:
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& v : c_) v %= p_;
    trim();
  }
  FpPoly(std::uint64_t p, const IntPolynomial& f) : p_(p) {
    for (const auto& v : f.coefficients()) {
      BigInt r = v % p;
      if (r < 0) r += p;
      c_.push_back(r.convert_to<std::uint64_t>());
    }
    trim();
  }

  static FpPoly zero(std::uint64_t p) { return FpPoly(p, std::vector<std::uint64_t>{}); }
  static FpPoly constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, std::vector<std::uint64_t>{v}); }
  static FpPoly x(std::uint64_t p) { return FpPoly(p, std::vector<std::uint64_t>{0, 1}); }

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  IntPolynomial lift() const {
    std::vector<BigInt> v(c_.begin(), c_.end());
    return IntPolynomial(std::move(v));
  }

  FpPoly monic() const {
    if (is_zero()) return *this;
    const std::uint64_t inv = inverse(c_.back());
    std::vector<std::uint64_t> out(c_);
    for (auto& v : out) v = v * inv % p_;
    return FpPoly(p_, std::move(out));
  }

  FpPoly derivative() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * (i % p_) % p_);
    return FpPoly(p_, std::move(out));
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<std::uint64_t> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] + b[i]) % a.p_;
    return FpPoly(a.p_, std::move(out));
  }

  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<std::uint64_t> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] + a.p_ - b[i]) % a.p_;
    return FpPoly(a.p_, std::move(out));
  }

  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p_);
    std::vector<std::uint64_t> out(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = (out[i + j] + a.c_[i] * b.c_[j]) % a.p_;
    return FpPoly(a.p_, std::move(out));
  }

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
    if (a.degree() < b.degree()) return {FpPoly::zero(a.p_), a};
    const std::uint64_t p = a.p_;
    std::vector<std::uint64_t> rem(a.c_);
    const auto db = static_cast<std::size_t>(b.degree());
    const std::uint64_t inv = a.inverse(b.c_.back());
    std::vector<std::uint64_t> quot(rem.size() - db, 0);
    for (std::size_t i = rem.size(); i-- > db;) {
      const std::uint64_t q = rem[i] * inv % p;
      if (q == 0) continue;
      quot[i - db] = q;
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = (rem[i - db + j] + (p - q) * b.c_[j]) % p;
    }
    rem.resize(db);
    return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
  }

  friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

  friend FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
      FpPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// this^e mod m with an arbitrary-precision exponent.
  FpPoly powmod(const BigInt& e, const FpPoly& m) const {
    FpPoly result = constant(p_, 1) % m;
    FpPoly base = *this % m;
    BigInt k = e;
    while (k > 0) {
      if ((k & 1) != 0) result = (result * base) % m;
      base = (base * base) % m;
      k >>= 1;
    }
    return result;
  }

  /// Lexicographic order by degree, then coefficients from the top.
  friend bool operator<(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }

  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

struct FpFactor {
  FpPoly factor;
  int multiplicity;
};

namespace detail {

/// f = g(x^p) for monic f with f' = 0; returns g (coefficient p-th roots are
/// the identity on F_p).
inline FpPoly pth_root(const FpPoly& f) {
  const std::uint64_t p = f.prime();
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f.coeffs()[i]);
  return FpPoly(p, std::move(out));
}

inline void squarefree(const FpPoly& f, int scale, std::vector<FpFactor>& out) {
  const std::uint64_t p = f.prime();
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly fac = w / y;
    if (!fac.is_one()) out.push_back({fac.monic(), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) squarefree(pth_root(c.monic()), scale * static_cast<int>(p), out);
}

/// Pairs (product of all irreducible factors of degree k, k).
inline std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  const std::uint64_t p = f.prime();
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x = FpPoly::x(p);
  FpPoly h = x % f;
  for (int k = 1; 2 * k <= f.degree(); ++k) {
    h = h.powmod(p, f);
    FpPoly g = gcd(f, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, k);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

inline void equal_degree(const FpPoly& f, int k, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == k) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = f.prime();
  BigInt q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  for (;;) {
    std::vector<std::uint64_t> r(static_cast<std::size_t>(f.degree()));
    for (auto& v : r) v = rng() % p;
    FpPoly a(p, std::move(r));
    if (a.degree() < 1) continue;
    FpPoly b = FpPoly::zero(p);
    if (p == 2) {
      // Tr(a) = a + a^2 + ... + a^{2^{k-1}}
      FpPoly t = a % f;
      b = t;
      for (int i = 1; i < k; ++i) {
        t = (t * t) % f;
        b = b + t;
      }
    } else {
      b = a.powmod((q - 1) / 2, f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, k, rng, out);
      equal_degree(f / g, k, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization of a polynomial over F_p into monic irreducibles
/// with multiplicities, sorted by (degree, coefficients). The random choices
/// in equal-degree splitting use a fixed seed.
inline std::vector<FpFactor> factor_mod_p(const IntPolynomial& poly, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("factor_mod_p: p is not prime");
  FpPoly f = FpPoly(p, poly).monic();
  if (f.is_zero()) throw std::invalid_argument("factor_mod_p: polynomial vanishes mod p");
  std::vector<FpFactor> sqf;
  if (f.degree() > 0) detail::squarefree(f, 1, sqf);
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<FpFactor> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, k] : detail::distinct_degree(part)) {
      std::vector<FpPoly> irr;
      detail::equal_degree(block, k, rng, irr);
      for (auto& g : irr) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return a.factor < b.factor;
  });
  return out;
}

}  // namespace trigroup
