#pragma once

// Exact arithmetic in O = Z[zeta + zeta^{-1}] = Z[x]/Psi_n and in Z[zeta] =
// Z[x]/Phi_n, plus finite quotients Z/N[x]/(h) with h monic. The finite
// quotient type covers both O/N (h = Psi_n mod N) and residue rings
// O/(p, g) for a factor g of Psi_n mod p.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "trigroup/poly.hpp"

namespace trigroup {

enum class RingVariant { RealSubfield, Cyclotomic };

class NumberRing {
 public:
  /// O = Z[zeta_n + zeta_n^{-1}] in the power basis of the generator.
  static std::shared_ptr<const NumberRing> real(int n) {
    if (n < 3) throw std::invalid_argument("NumberRing::real: n must be >= 3");
    return std::shared_ptr<const NumberRing>(new NumberRing(n, RingVariant::RealSubfield, real_minimal_poly(n)));
  }

  /// Z[zeta_n] in the power basis of zeta.
  static std::shared_ptr<const NumberRing> cyclotomic(int n) {
    if (n < 1) throw std::invalid_argument("NumberRing::cyclotomic: n must be >= 1");
    return std::shared_ptr<const NumberRing>(new NumberRing(n, RingVariant::Cyclotomic, cyclotomic_poly(n)));
  }

  int n() const { return n_; }
  RingVariant variant() const { return variant_; }
  int degree() const { return modulus_.degree(); }
  const IntPolynomial& defining_poly() const { return modulus_; }

  bool same_as(const NumberRing& other) const { return n_ == other.n_ && variant_ == other.variant_; }

  /// Reduce a coefficient vector of any length to exactly degree() entries.
  std::vector<BigInt> reduce(std::vector<BigInt> coeffs) const {
    const auto d = static_cast<std::size_t>(degree());
    for (std::size_t i = coeffs.size(); i-- > d;) {
      if (coeffs[i] == 0) continue;
      BigInt q = coeffs[i];
      for (std::size_t j = 0; j <= d; ++j) coeffs[i - d + j] -= q * modulus_[j];
    }
    coeffs.resize(d);
    return coeffs;
  }

 private:
  NumberRing(int n, RingVariant v, IntPolynomial m) : n_(n), variant_(v), modulus_(std::move(m)) {}

  int n_;
  RingVariant variant_;
  IntPolynomial modulus_;
};

using RingPtr = std::shared_ptr<const NumberRing>;

inline void require_same_ring(const NumberRing& a, const NumberRing& b) {
  if (!a.same_as(b)) throw std::invalid_argument("ring mismatch");
}

class RingElement {
 public:
  RingElement(RingPtr ring, std::vector<BigInt> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    const auto d = static_cast<std::size_t>(ring_->degree());
    if (coeffs_.size() > d) coeffs_ = ring_->reduce(std::move(coeffs_));
    coeffs_.resize(d);
  }

  static RingElement integer(const RingPtr& ring, const BigInt& v) { return RingElement(ring, {v}); }
  static RingElement zero(const RingPtr& ring) { return integer(ring, 0); }
  static RingElement one(const RingPtr& ring) { return integer(ring, 1); }
  /// The power-basis generator: zeta + zeta^{-1} or zeta depending on the ring.
  static RingElement generator(const RingPtr& ring) {
    std::vector<BigInt> c{0, 1};
    return RingElement(ring, std::move(c));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(*a.ring_, *b.ring_);
    std::vector<BigInt> out = a.coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
    return RingElement(a.ring_, std::move(out));
  }

  friend RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same_ring(*a.ring_, *b.ring_);
    std::vector<BigInt> out = a.coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.coeffs_[i];
    return RingElement(a.ring_, std::move(out));
  }

  friend RingElement operator-(const RingElement& a) {
    std::vector<BigInt> out = a.coeffs_;
    for (auto& c : out) c = -c;
    return RingElement(a.ring_, std::move(out));
  }

  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(*a.ring_, *b.ring_);
    const std::size_t d = a.coeffs_.size();
    std::vector<BigInt> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RingElement(a.ring_, a.ring_->reduce(std::move(prod)));
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ring_->same_as(*b.ring_) && a.coeffs_ == b.coeffs_;
  }

  RingElement pow(unsigned e) const {
    RingElement result = one(ring_);
    RingElement base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      base = base * base;
      e >>= 1u;
    }
    return result;
  }

 private:
  RingPtr ring_;
  std::vector<BigInt> coeffs_;
};

/// ring_mul from the module contract; the operator does the work.
inline RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }

/// Image of an element of Z[zeta + zeta^{-1}] in Z[zeta] under
/// zeta + zeta^{-1} -> zeta + zeta^{n-1}.
inline RingElement embed_real_to_cyclotomic(const RingElement& a, const RingPtr& target) {
  const RingPtr& src = a.ring();
  if (src->variant() != RingVariant::RealSubfield) throw std::invalid_argument("embed: source must be the real ring");
  if (target->variant() != RingVariant::Cyclotomic || target->n() != src->n())
    throw std::invalid_argument("embed: target must be Z[zeta_n] for the same n");
  std::vector<BigInt> y(static_cast<std::size_t>(src->n()));
  y[1] += 1;
  y[static_cast<std::size_t>(src->n() - 1)] += 1;
  const RingElement gen(target, std::move(y));
  RingElement acc = RingElement::zero(target);
  RingElement power = RingElement::one(target);
  for (const auto& c : a.coeffs()) {
    acc = acc + RingElement::integer(target, c) * power;
    power = power * gen;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Finite quotients

inline std::uint32_t mod_reduce(const BigInt& v, std::uint32_t modulus) {
  BigInt r = v % modulus;
  if (r < 0) r += modulus;
  return r.convert_to<std::uint32_t>();
}

/// Z/N[x]/(h) with h monic, tagged with the number ring it is a quotient of.
class QuotientRing {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

  /// O/N in the same power basis as the exact ring.
  static std::shared_ptr<const QuotientRing> over(const RingPtr& base, std::uint64_t modulus) {
    return make(base, modulus, base->defining_poly(), true);
  }

  /// Z/N[x]/(h) for a monic h whose reduction divides the defining
  /// polynomial mod N (e.g. a product of prime factors mod p).
  static std::shared_ptr<const QuotientRing> residue(const RingPtr& base, std::uint64_t modulus,
                                                     const IntPolynomial& h) {
    return make(base, modulus, h, false);
  }

  const RingPtr& base() const { return base_; }
  int n() const { return base_->n(); }
  std::uint32_t modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  /// Monic reduction polynomial, lowest degree first, coefficients in [0, N).
  const std::vector<std::uint32_t>& poly() const { return poly_; }
  /// True for O/N itself, false for residue rings.
  bool is_full_level() const { return full_level_; }

  bool same_as(const QuotientRing& o) const {
    return base_->same_as(*o.base_) && modulus_ == o.modulus_ && poly_ == o.poly_;
  }

  std::uint32_t reduce_int(const BigInt& v) const { return mod_reduce(v, modulus_); }

  /// Reduce coefficients of any length into degree() residues.
  std::vector<std::uint32_t> reduce(std::span<const BigInt> coeffs) const {
    std::vector<std::uint64_t> c(std::max(coeffs.size(), static_cast<std::size_t>(degree())));
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce_int(coeffs[i]);
    return reduce_wide(std::move(c));
  }

  /// out = a * b; all three point at degree() coefficients.
  void mul(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
    const auto d = static_cast<std::size_t>(degree());
    std::vector<std::uint64_t> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % modulus_;
    }
    auto r = reduce_wide(std::move(prod));
    std::copy(r.begin(), r.end(), out);
  }

  /// Matrix of multiplication by y: column j holds y * x^j, stored row-major
  /// as m[i * d + j].
  std::vector<std::uint32_t> mul_matrix(const std::uint32_t* y) const {
    const auto d = static_cast<std::size_t>(degree());
    std::vector<std::uint32_t> m(d * d), basis(d), col(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(basis.begin(), basis.end(), 0u);
      basis[j] = 1;
      mul(y, basis.data(), col.data());
      for (std::size_t i = 0; i < d; ++i) m[i * d + j] = col[i];
    }
    return m;
  }

  std::string describe() const {
    std::string s = "O_" + std::to_string(n()) + "/" + std::to_string(modulus_);
    if (!full_level_) {
      std::vector<BigInt> c(poly_.begin(), poly_.end());
      s += " mod (" + IntPolynomial(std::move(c)).to_string() + ")";
    }
    return s;
  }

 private:
  static std::shared_ptr<const QuotientRing> make(const RingPtr& base, std::uint64_t modulus, const IntPolynomial& h,
                                                  bool full) {
    if (modulus < 2 || modulus > kMaxModulus) throw std::invalid_argument("QuotientRing: modulus out of range");
    if (!h.is_monic() || h.degree() < 1) throw std::invalid_argument("QuotientRing: reduction polynomial must be monic");
    auto q = std::shared_ptr<QuotientRing>(new QuotientRing());
    q->base_ = base;
    q->modulus_ = static_cast<std::uint32_t>(modulus);
    q->full_level_ = full;
    for (const auto& c : h.coefficients()) q->poly_.push_back(mod_reduce(c, q->modulus_));
    return q;
  }

  QuotientRing() = default;

  std::vector<std::uint32_t> reduce_wide(std::vector<std::uint64_t> c) const {
    const auto d = static_cast<std::size_t>(degree());
    for (std::size_t i = c.size(); i-- > d;) {
      std::uint64_t q = c[i] % modulus_;
      if (q == 0) continue;
      const std::uint64_t neg = modulus_ - q;
      for (std::size_t j = 0; j < d; ++j) c[i - d + j] = (c[i - d + j] + neg * poly_[j]) % modulus_;
    }
    std::vector<std::uint32_t> out(d);
    for (std::size_t i = 0; i < d && i < c.size(); ++i) out[i] = static_cast<std::uint32_t>(c[i] % modulus_);
    return out;
  }

  RingPtr base_;
  std::uint32_t modulus_ = 0;
  bool full_level_ = true;
  std::vector<std::uint32_t> poly_;
};

using QuotientPtr = std::shared_ptr<const QuotientRing>;

class QuotientElement {
 public:
  QuotientElement(QuotientPtr ring, std::vector<std::uint32_t> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(ring_->degree()))
      throw std::invalid_argument("QuotientElement: coefficient count must equal ring degree");
    for (auto c : coeffs_)
      if (c >= ring_->modulus()) throw std::invalid_argument("QuotientElement: coefficient not reduced");
  }

  static QuotientElement integer(const QuotientPtr& ring, const BigInt& v) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(ring->degree()), 0);
    c[0] = ring->reduce_int(v);
    return QuotientElement(ring, std::move(c));
  }
  static QuotientElement zero(const QuotientPtr& ring) { return integer(ring, 0); }
  static QuotientElement one(const QuotientPtr& ring) { return integer(ring, 1); }

  /// Reduction of an exact element; the target must be a quotient of its ring.
  static QuotientElement reduce(const RingElement& a, const QuotientPtr& ring) {
    require_same_ring(*a.ring(), *ring->base());
    return QuotientElement(ring, ring->reduce(a.coeffs()));
  }

  const QuotientPtr& ring() const { return ring_; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }
  bool is_zero() const {
    for (auto c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
    check(a, b);
    const std::uint64_t m = a.ring_->modulus();
    std::vector<std::uint32_t> out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs_[i]} + b.coeffs_[i]) % m);
    return QuotientElement(a.ring_, std::move(out));
  }

  friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) {
    check(a, b);
    const std::uint64_t m = a.ring_->modulus();
    std::vector<std::uint32_t> out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs_[i]} + m - b.coeffs_[i]) % m);
    return QuotientElement(a.ring_, std::move(out));
  }

  friend QuotientElement operator-(const QuotientElement& a) { return zero(a.ring_) - a; }

  friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
    check(a, b);
    std::vector<std::uint32_t> out(a.coeffs_.size());
    a.ring_->mul(a.coeffs_.data(), b.coeffs_.data(), out.data());
    return QuotientElement(a.ring_, std::move(out));
  }

  friend bool operator==(const QuotientElement& a, const QuotientElement& b) {
    return a.ring_->same_as(*b.ring_) && a.coeffs_ == b.coeffs_;
  }

 private:
  static void check(const QuotientElement& a, const QuotientElement& b) {
    if (!a.ring_->same_as(*b.ring_)) throw std::invalid_argument("ring/modulus mismatch");
  }

  QuotientPtr ring_;
  std::vector<std::uint32_t> coeffs_;
};

inline QuotientElement ring_mul(const QuotientElement& a, const QuotientElement& b) { return a * b; }

namespace detail {

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) return 0;
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// Solve M x = rhs over Z/N for square M (row-major). Works for composite N
/// by clearing each column with Euclidean row operations; returns nullopt
/// when M is not invertible.
inline std::optional<std::vector<std::uint32_t>> solve_mod(std::vector<std::uint64_t> m, std::vector<std::uint64_t> rhs,
                                                           std::uint64_t modulus) {
  const std::size_t d = rhs.size();
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return m[i * d + j]; };
  auto row_sub = [&](std::size_t dst, std::size_t src, std::uint64_t q) {
    const std::uint64_t neg = (modulus - q % modulus) % modulus;
    for (std::size_t j = 0; j < d; ++j) at(dst, j) = (at(dst, j) + neg * at(src, j)) % modulus;
    rhs[dst] = (rhs[dst] + neg * rhs[src]) % modulus;
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d; ++j) std::swap(at(a, j), at(b, j));
    std::swap(rhs[a], rhs[b]);
  };
  for (std::size_t k = 0; k < d; ++k) {
    for (;;) {
      std::size_t best = d;
      for (std::size_t i = k; i < d; ++i)
        if (at(i, k) != 0 && (best == d || at(i, k) < at(best, k))) best = i;
      if (best == d) return std::nullopt;
      swap_rows(k, best);
      bool done = true;
      for (std::size_t i = k + 1; i < d; ++i) {
        if (at(i, k) == 0) continue;
        row_sub(i, k, at(i, k) / at(k, k));
        if (at(i, k) != 0) done = false;
      }
      if (done) break;
    }
    const std::uint64_t inv = inverse_mod(at(k, k), modulus);
    if (inv == 0 && modulus != 1) return std::nullopt;
    for (std::size_t j = 0; j < d; ++j) at(k, j) = at(k, j) * inv % modulus;
    rhs[k] = rhs[k] * inv % modulus;
    for (std::size_t i = 0; i < d; ++i)
      if (i != k && at(i, k) != 0) row_sub(i, k, at(i, k));
  }
  std::vector<std::uint32_t> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(rhs[i]);
  return out;
}

}  // namespace detail

/// Multiplicative inverse in a finite quotient, or nullopt if a is not a unit.
inline std::optional<QuotientElement> try_invert(const QuotientElement& a) {
  const auto& ring = a.ring();
  const auto d = static_cast<std::size_t>(ring->degree());
  auto mm = ring->mul_matrix(a.coeffs().data());
  std::vector<std::uint64_t> m(mm.begin(), mm.end());
  std::vector<std::uint64_t> rhs(d, 0);
  rhs[0] = 1;
  auto sol = detail::solve_mod(std::move(m), std::move(rhs), ring->modulus());
  if (!sol) return std::nullopt;
  QuotientElement b(ring, std::move(*sol));
  if (!(a * b == QuotientElement::one(ring))) return std::nullopt;
  return b;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json poly_to_json(const IntPolynomial& p) {
  auto arr = nlohmann::json::array();
  for (const auto& c : p.coefficients()) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
      arr.push_back(c.convert_to<std::int64_t>());
    else
      arr.push_back(c.str());
  }
  return arr;
}

inline IntPolynomial poly_from_json(const nlohmann::json& j) {
  std::vector<BigInt> c;
  for (const auto& v : j) c.emplace_back(v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<std::int64_t>()));
  return IntPolynomial(std::move(c));
}

inline nlohmann::json to_json(const QuotientElement& e) {
  nlohmann::json j{{"n", e.ring()->n()}, {"N", e.ring()->modulus()}, {"coeffs", e.coeffs()}};
  if (!e.ring()->is_full_level()) j["reduction_poly"] = e.ring()->poly();
  return j;
}

inline QuotientElement quotient_from_json(const nlohmann::json& j) {
  const auto base = NumberRing::real(j.at("n").get<int>());
  const auto modulus = j.at("N").get<std::uint64_t>();
  QuotientPtr ring;
  if (j.contains("reduction_poly")) {
    std::vector<BigInt> h;
    for (auto c : j.at("reduction_poly").get<std::vector<std::uint32_t>>()) h.emplace_back(c);
    ring = QuotientRing::residue(base, modulus, IntPolynomial(std::move(h)));
  } else {
    ring = QuotientRing::over(base, modulus);
  }
  return QuotientElement(ring, j.at("coeffs").get<std::vector<std::uint32_t>>());
}

}  // namespace trigroup
