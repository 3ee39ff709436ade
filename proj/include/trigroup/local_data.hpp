#pragma once

// Splitting of rational primes in O = Z[x]/Psi_n, residue rings, exact orders
// of SL_2 over finite quotients, and membership in powers of prime ideals.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "trigroup/fp_poly.hpp"
#include "trigroup/poly.hpp"
#include "trigroup/ring.hpp"

namespace trigroup {

/// Decomposition of p in O: p O = (P_1 ... P_r)^e with residue fields of
/// size p^f; e * f * r = d.
struct SplittingData {
  std::uint64_t p = 0;
  int e = 0;
  int f = 0;
  int r = 0;
  int d = 0;
  /// Distinct monic irreducible factors of Psi_n mod p, one per prime above p.
  std::vector<FpPoly> factors;
};

inline BigInt big_pow(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor_integer(std::uint64_t N) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= N; ++q) {
    if (N % q != 0) continue;
    unsigned a = 0;
    while (N % q == 0) {
      N /= q;
      ++a;
    }
    out.emplace_back(q, a);
  }
  if (N > 1) out.emplace_back(N, 1);
  return out;
}

/// n = 2^k * m with m odd.
inline std::pair<int, int> split_two_power(int n) {
  int k = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++k;
  }
  return {k, n};
}

namespace detail {

/// Smallest f >= 1 with 2^f = +-1 mod m (order of 2 in (Z/m)^x / +-1).
inline int order_of_two_mod_pm(int m) {
  if (m == 1) return 1;
  std::int64_t v = 2 % m;
  for (int f = 1;; ++f) {
    if (v == 1 || v == m - 1) return f;
    v = v * 2 % m;
  }
}

}  // namespace detail

/// Closed forms for p = 2: e = phi(2^k) when m > 1 and phi(2^k)/2 when m = 1;
/// f = order of 2 in (Z/m)^x / +-1; r = d / (e f).
inline SplittingData two_splitting_closed_form(int n) {
  const auto [k, m] = split_two_power(n);
  const int phi2k = k == 0 ? 1 : (1 << (k - 1));
  SplittingData s;
  s.p = 2;
  s.d = euler_phi(n) / 2;
  s.e = m > 1 ? phi2k : phi2k / 2;
  s.f = detail::order_of_two_mod_pm(m);
  s.r = s.d / (s.e * s.f);
  return s;
}

/// (e, f, r) from the factorization of Psi_n mod p. All factors of Psi_n mod
/// p share one degree and one multiplicity (Galois extension).
inline SplittingData splitting_data(int n, std::uint64_t p) {
  if (n < 3) throw std::invalid_argument("splitting_data: n must be >= 3");
  const IntPolynomial psi = real_minimal_poly(n);
  const auto fac = factor_mod_p(psi, p);
  SplittingData s;
  s.p = p;
  s.d = psi.degree();
  s.e = fac.front().multiplicity;
  s.f = fac.front().factor.degree();
  s.r = static_cast<int>(fac.size());
  for (const auto& [g, mult] : fac) {
    if (mult != s.e || g.degree() != s.f)
      throw std::logic_error("splitting_data: unequal factor degrees or multiplicities for n=" + std::to_string(n) +
                             ", p=" + std::to_string(p));
    s.factors.push_back(g);
  }
  if (s.e * s.f * s.r != s.d) throw std::logic_error("splitting_data: e*f*r != d");
  if (p == 2) {
    const auto c = two_splitting_closed_form(n);
    if (c.e != s.e || c.f != s.f || c.r != s.r)
      throw std::logic_error("splitting_data: p=2 closed form disagrees with factorization for n=" + std::to_string(n));
  }
  return s;
}

/// Size of the residue field of a prime above p.
inline BigInt residue_card(int n, std::uint64_t p) {
  return big_pow(BigInt(p), static_cast<unsigned>(splitting_data(n, p).f));
}

/// |O/N| = N^d.
inline BigInt ring_card(int n, std::uint64_t N) {
  return big_pow(BigInt(N), static_cast<unsigned>(euler_phi(n) / 2));
}

struct LocalOrder {
  std::uint64_t p;
  unsigned a;
  BigInt value;
};

struct GroupOrder {
  BigInt value;
  std::vector<LocalOrder> factors;
};

/// |SL_2(O/N)| = prod over p^a || N of p^{3ad - 2fr} (p^{2f} - 1)^r, i.e.
/// |O/p^a|^3 prod over P | p of (1 - |O/P|^{-2}).
inline GroupOrder sl2_order(int n, std::uint64_t N) {
  if (N < 2) throw std::invalid_argument("sl2_order: N must be >= 2");
  GroupOrder out;
  out.value = 1;
  for (const auto& [p, a] : factor_integer(N)) {
    const auto s = splitting_data(n, p);
    const BigInt q2 = big_pow(BigInt(p), static_cast<unsigned>(2 * s.f));
    BigInt local = big_pow(BigInt(p), static_cast<unsigned>(3 * a * s.d - 2 * s.f * s.r)) *
                   big_pow(q2 - 1, static_cast<unsigned>(s.r));
    out.value *= local;
    out.factors.push_back({p, a, std::move(local)});
  }
  return out;
}

/// O/(P_1 ... P_r) = prod of the residue fields above p, as F_p[x]/(prod g_i).
inline QuotientPtr residue_ring(const RingPtr& base, const SplittingData& s) {
  FpPoly h = FpPoly::constant(s.p, 1);
  for (const auto& g : s.factors) h = h * g;
  return QuotientRing::residue(base, s.p, h.lift());
}

/// |SL_2| of the residue ring: prod over primes above p of q^3 - q, q = p^f.
inline BigInt residue_sl2_order(const SplittingData& s) {
  const BigInt q = big_pow(BigInt(s.p), static_cast<unsigned>(s.f));
  return big_pow(q * q * q - q, static_cast<unsigned>(s.r));
}

// ---------------------------------------------------------------------------
// Prime ideal powers

/// Integer lattice in Z^d kept in row-echelon (Hermite) form.
class IntLattice {
 public:
  explicit IntLattice(std::size_t dim) : dim_(dim), pivots_(dim) {}

  void insert(std::vector<BigInt> v) {
    for (std::size_t col = 0; col < dim_; ++col) {
      if (v[col] == 0) continue;
      auto& piv = pivots_[col];
      if (piv.empty()) {
        piv = std::move(v);
        return;
      }
      while (v[col] != 0) {
        const BigInt q = piv[col] / v[col];
        for (std::size_t j = col; j < dim_; ++j) piv[j] -= q * v[j];
        std::swap(piv, v);
      }
    }
  }

  bool contains(std::vector<BigInt> v) const {
    for (std::size_t col = 0; col < dim_; ++col) {
      if (v[col] == 0) continue;
      const auto& piv = pivots_[col];
      if (piv.empty() || v[col] % piv[col] != 0) return false;
      const BigInt q = v[col] / piv[col];
      for (std::size_t j = col; j < dim_; ++j) v[j] -= q * piv[j];
    }
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<BigInt>> pivots_;
};

/// The prime P = (p, g(x)) of O for an irreducible factor g of Psi_n mod p.
struct PrimeAbove {
  std::uint64_t p;
  FpPoly g;
};

inline std::vector<PrimeAbove> primes_above(const SplittingData& s) {
  std::vector<PrimeAbove> out;
  for (const auto& g : s.factors) out.push_back({s.p, g});
  return out;
}

/// Z-basis generators of P^j: p^s g^t x^c for s + t = j and 0 <= c < d.
inline IntLattice prime_power_lattice(const RingPtr& ring, const PrimeAbove& P, int j) {
  const auto d = static_cast<std::size_t>(ring->degree());
  IntLattice lat(d);
  const RingElement g(ring, P.g.lift().coefficients());
  const RingElement x = RingElement::generator(ring);
  for (int t = 0; t <= j; ++t) {
    RingElement gen = RingElement::integer(ring, big_pow(BigInt(P.p), static_cast<unsigned>(j - t))) *
                      g.pow(static_cast<unsigned>(t));
    for (std::size_t c = 0; c < d; ++c) {
      lat.insert(gen.coeffs());
      gen = gen * x;
    }
  }
  return lat;
}

inline bool in_prime_power(const RingElement& a, const RingPtr& ring, const PrimeAbove& P, int j) {
  return prime_power_lattice(ring, P, j).contains(a.coeffs());
}

inline nlohmann::json to_json(const SplittingData& s) {
  auto factors = nlohmann::json::array();
  for (const auto& g : s.factors) factors.push_back(g.lift().to_string());
  return {{"p", s.p}, {"e", s.e}, {"f", s.f}, {"r", s.r}, {"d", s.d}, {"factors", factors}};
}

}  // namespace trigroup
