#pragma once

// 2x2 matrices over exact and finite rings, the generators T, U, R of the
// triangle group, and words in those generators.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "trigroup/ring.hpp"

namespace trigroup {

template <class E>
struct Mat2 {
  E a, b, c, d;

  template <class RingRef>
  static Mat2 identity(const RingRef& ring) {
    return {E::one(ring), E::zero(ring), E::zero(ring), E::one(ring)};
  }

  E det() const { return a * d - b * c; }
  E trace() const { return a + d; }

  /// Inverse of a determinant-one matrix.
  Mat2 adjugate() const { return {d, -b, -c, a}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

  Mat2 pow(std::uint64_t e) const {
    Mat2 result = identity(a.ring());
    Mat2 base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      base = base * base;
      e >>= 1u;
    }
    return result;
  }
};

using ExactMat = Mat2<RingElement>;
using ModMat = Mat2<QuotientElement>;

inline ModMat reduce_mat(const ExactMat& m, const QuotientPtr& ring) {
  return {QuotientElement::reduce(m.a, ring), QuotientElement::reduce(m.b, ring), QuotientElement::reduce(m.c, ring),
          QuotientElement::reduce(m.d, ring)};
}

// ---------------------------------------------------------------------------
// Words

enum class Letter : std::uint8_t { T, Tinv, U, Uinv, R, Rinv };

inline char letter_char(Letter l) {
  static constexpr char chars[] = {'T', 't', 'U', 'u', 'R', 'r'};
  return chars[static_cast<int>(l)];
}

inline Letter letter_from_char(char ch) {
  switch (ch) {
    case 'T': return Letter::T;
    case 't': return Letter::Tinv;
    case 'U': return Letter::U;
    case 'u': return Letter::Uinv;
    case 'R': return Letter::R;
    case 'r': return Letter::Rinv;
    default: throw std::invalid_argument(std::string("unknown word letter '") + ch + "'");
  }
}

inline Letter inverse_letter(Letter l) { return static_cast<Letter>(static_cast<int>(l) ^ 1); }

using Word = std::vector<Letter>;

inline std::string word_to_string(const Word& w) {
  std::string s;
  for (auto l : w) s += letter_char(l);
  return s;
}

inline Word word_from_string(std::string_view s) {
  Word w;
  for (char ch : s) w.push_back(letter_from_char(ch));
  return w;
}

inline Word word_inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
  return out;
}

inline Word word_power(const Word& w, long long e) {
  const Word base = e < 0 ? word_inverse(w) : w;
  Word out;
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline nlohmann::json word_to_json(const Word& w) {
  auto arr = nlohmann::json::array();
  for (auto l : w) arr.push_back(std::string(1, letter_char(l)));
  return arr;
}

inline Word word_from_json(const nlohmann::json& j) {
  Word w;
  for (const auto& v : j) {
    const auto s = v.get<std::string>();
    if (s.size() != 1) throw std::invalid_argument("word letters must be single characters");
    w.push_back(letter_from_char(s[0]));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Generators

/// T = (1, 2+x; 0, 1), U = -(1 0; -1 1), R = U T over O with x = zeta + 1/zeta.
struct GeneratorSet {
  int n;
  RingPtr ring;
  ExactMat T, U, R, Tinv, Uinv, Rinv;

  const ExactMat& of(Letter l) const {
    switch (l) {
      case Letter::T: return T;
      case Letter::Tinv: return Tinv;
      case Letter::U: return U;
      case Letter::Uinv: return Uinv;
      case Letter::R: return R;
      case Letter::Rinv: return Rinv;
    }
    throw std::logic_error("bad letter");
  }
};

/// Builds and validates the generators: R = UT, unit determinants, R of
/// exact order n, and R^{n/2} = -I for even n.
inline GeneratorSet generators(int n) {
  if (n < 3) throw std::invalid_argument("generators: n must be >= 3");
  const RingPtr ring = NumberRing::real(n);
  const auto one = RingElement::one(ring);
  const auto zero = RingElement::zero(ring);
  const auto tr = RingElement::integer(ring, 2) + RingElement::generator(ring);
  const ExactMat T{one, tr, zero, one};
  const ExactMat U{-one, zero, one, -one};
  const ExactMat R = U * T;
  GeneratorSet g{n, ring, T, U, R, T.adjugate(), U.adjugate(), R.adjugate()};
  const auto I = ExactMat::identity(ring);
  if (!(g.R == ExactMat{-one, -tr, one, tr - one})) throw std::logic_error("generators: R != UT");
  for (const auto* m : {&g.T, &g.U, &g.R})
    if (!(m->det() == one)) throw std::logic_error("generators: determinant is not 1");
  if (!(g.R.pow(static_cast<std::uint64_t>(n)) == I)) throw std::logic_error("generators: R^n != I");
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool prime = true;
    for (int s = 2; s * s <= q; ++s)
      if (q % s == 0) prime = false;
    if (prime && g.R.pow(static_cast<std::uint64_t>(n / q)) == I) throw std::logic_error("generators: R has order < n");
  }
  if (n % 2 == 0 && !(g.R.pow(static_cast<std::uint64_t>(n / 2)) == -I))
    throw std::logic_error("generators: R^{n/2} != -I");
  return g;
}

/// Exact product of the word's letters, left to right; the empty word is I.
inline ExactMat evaluate_word(const GeneratorSet& gens, const Word& w) {
  ExactMat acc = ExactMat::identity(gens.ring);
  for (auto l : w) acc = acc * gens.of(l);
  return acc;
}

/// Same product computed in O/N (or a residue ring) throughout.
inline ModMat evaluate_word_mod(const GeneratorSet& gens, const Word& w, const QuotientPtr& ring) {
  ModMat letters[6] = {reduce_mat(gens.T, ring),    reduce_mat(gens.Tinv, ring), reduce_mat(gens.U, ring),
                       reduce_mat(gens.Uinv, ring), reduce_mat(gens.R, ring),    reduce_mat(gens.Rinv, ring)};
  ModMat acc = ModMat::identity(ring);
  for (auto l : w) acc = acc * letters[static_cast<int>(l)];
  return acc;
}

/// Matrix of eigenvectors of R over Z[zeta]: E = (-1-zeta, -1-zeta^{-1}; 1, 1),
/// with E^{-1} R E = diag(zeta^{-1}, zeta).
struct EigenBasis {
  RingPtr ring;
  ExactMat E;
  RingElement zeta, zeta_inv;
};

inline EigenBasis eigen_basis(int n) {
  const RingPtr ring = NumberRing::cyclotomic(n);
  const auto one = RingElement::one(ring);
  const auto zeta = RingElement::generator(ring);
  const auto zeta_inv = zeta.pow(static_cast<unsigned>(n - 1));
  return {ring, {-one - zeta, -one - zeta_inv, one, one}, zeta, zeta_inv};
}

/// Entrywise image of a matrix over O in Z[zeta].
inline ExactMat embed_mat(const ExactMat& m, const RingPtr& target) {
  return {embed_real_to_cyclotomic(m.a, target), embed_real_to_cyclotomic(m.b, target),
          embed_real_to_cyclotomic(m.c, target), embed_real_to_cyclotomic(m.d, target)};
}

inline nlohmann::json exact_to_json(const RingElement& e) {
  auto arr = nlohmann::json::array();
  for (const auto& c : e.coeffs()) arr.push_back(c.str());
  return arr;
}

inline nlohmann::json mat_to_json(const ExactMat& m) {
  // explicit array: entries of two strings would otherwise read as key/value pairs
  return nlohmann::json::array({exact_to_json(m.a), exact_to_json(m.b), exact_to_json(m.c), exact_to_json(m.d)});
}

inline nlohmann::json mat_to_json(const ModMat& m) {
  return nlohmann::json::array({m.a.coeffs(), m.b.coeffs(), m.c.coeffs(), m.d.coeffs()});
}

}  // namespace trigroup
