#pragma once

// The cusp invariants delta (via the dihedral mod-2 image) and kappa, the
// congruence classification, and search plus exact verification of witness
// certificates showing that an invariant does not factor through P^1(O/N).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "trigroup/closure.hpp"
#include "trigroup/errors.hpp"
#include "trigroup/index.hpp"
#include "trigroup/local_data.hpp"
#include "trigroup/mat2.hpp"

namespace trigroup {

/// r^rotation t^reflection with r(x) = x + 1, t(x) = -x on Z/n'.
struct DihedralElement {
  int rotation = 0;
  int reflection = 0;
  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

/// The mod-2 image of the triangle group labelled by (R mod 2)^a (T mod 2)^e.
class DihedralTable {
 public:
  explicit DihedralTable(int n)
      : n_(n), nprime_(n_prime(n)), gens_(generators(n)), ring2_(QuotientRing::over(gens_.ring, 2)),
        closure_(close_image(gens_, ring2_)) {
    // n = 4: T = I mod 2, so the image is <U> of order 2 and carries no rotation
    if (n == 4) throw PreconditionViolated("dihedral table: the mod-2 image for n = 4 has order 2");
    if (closure_.order() != static_cast<std::uint64_t>(2 * nprime_))
      throw std::logic_error("dihedral table: mod-2 image has order " + std::to_string(closure_.order()));
    labels_.assign(closure_.order(), std::nullopt);
    const ModMat r = reduce_mat(gens_.R, ring2_);
    const ModMat t = reduce_mat(gens_.T, ring2_);
    ModMat ra = ModMat::identity(ring2_);
    for (int a = 0; a < nprime_; ++a) {
      for (int e = 0; e < 2; ++e) {
        const auto idx = closure_.index_of(e ? ra * t : ra);
        if (!idx || labels_[*idx]) throw std::logic_error("dihedral table: labelling is not a bijection");
        labels_[*idx] = DihedralElement{a, e};
      }
      ra = ra * r;
    }
  }

  int n() const { return n_; }
  int order() const { return 2 * nprime_; }
  const GeneratorSet& gens() const { return gens_; }
  const QuotientPtr& ring() const { return ring2_; }
  const ClosureResult& closure() const { return closure_; }

  DihedralElement decompose(const ModMat& m) const {
    const auto idx = closure_.index_of(m);
    if (!idx) throw NotInImage("matrix is not in the mod-2 image");
    return *labels_[*idx];
  }

  ModMat matrix(const DihedralElement& x) const {
    const ModMat r = reduce_mat(gens_.R, ring2_);
    ModMat m = r.pow(static_cast<std::uint64_t>(((x.rotation % nprime_) + nprime_) % nprime_));
    return x.reflection ? m * reduce_mat(gens_.T, ring2_) : m;
  }

  /// r^a1 t^e1 r^a2 t^e2 = r^{a1 + (-1)^e1 a2} t^{e1 + e2}.
  DihedralElement compose(const DihedralElement& x, const DihedralElement& y) const {
    const int a = x.rotation + (x.reflection ? -y.rotation : y.rotation);
    return {((a % nprime_) + nprime_) % nprime_, (x.reflection + y.reflection) % 2};
  }

  /// g(0) for g = r^a t^e, which is a.
  int delta(const Word& w) const { return decompose(evaluate_word_mod(gens_, w, ring2_)).rotation; }

 private:
  int n_;
  int nprime_;
  GeneratorSet gens_;
  QuotientPtr ring2_;
  ClosureResult closure_;
  std::vector<std::optional<DihedralElement>> labels_;
};

inline DihedralElement dihedral_decompose(const DihedralTable& table, const ModMat& m) { return table.decompose(m); }

inline int delta_of_element(const DihedralTable& table, const Word& w) { return table.delta(w); }

enum class CuspBase { Infinity, Zero };

/// 0 on the orbit of infinity, 1 on the orbit of 0 (even n only).
inline int kappa_of_translate(int n, const Word&, CuspBase base) {
  if (base == CuspBase::Infinity) return 0;
  if (n % 2 != 0) throw OddN("kappa: for odd n the cusp 0 lies in the orbit of infinity");
  return 1;
}

struct CongruenceClassification {
  int n = 0;
  bool delta_congruence = false;
  bool kappa_congruence = false;
};

inline int distinct_prime_count(int m) { return static_cast<int>(factor_integer(static_cast<std::uint64_t>(m)).size()); }

inline CongruenceClassification classify_congruence(int n) {
  if (n < 3) throw std::invalid_argument("classify_congruence: n must be >= 3");
  const bool kappa_fails = n % 2 == 0 && (n / 2) % 2 == 1 && distinct_prime_count(n / 2) >= 2;
  return {n, n % 4 != 0 || is_power_of(n, 2), !kappa_fails};
}

// ---------------------------------------------------------------------------
// Certificates

struct Condition {
  std::string desc;
  bool pass = false;
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct WitnessCertificate {
  int n = 0;
  std::uint64_t N = 0;
  std::string kind;
  Word word;
  ExactMat exact;
  ModMat mod;
  std::vector<Condition> conditions;
  std::string interpretation;
};

inline bool divisible_by(const RingElement& e, const BigInt& N) {
  for (const auto& c : e.coeffs())
    if (c % N != 0) return false;
  return true;
}

inline bool is_unit_mod(const RingElement& e, std::uint64_t N) {
  return try_invert(QuotientElement::reduce(e, QuotientRing::over(e.ring(), N))).has_value();
}

inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t N) {
  const auto f = factor_integer(N);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

namespace detail {

inline std::vector<Condition> delta_conditions(int n, std::uint64_t N, const ExactMat& m, const Word& w) {
  const auto cls = classify_congruence(n);
  const DihedralTable table(n);
  const int np = n_prime(n);
  const auto target = reduce_mat(table.gens().R.pow(static_cast<std::uint64_t>(n / 4)), table.ring());
  const auto pp = prime_power(N);
  std::vector<Condition> c;
  c.push_back({"n is divisible by 4 and not a power of 2", !cls.delta_congruence});
  c.push_back({"N is a power of 2", pp && pp->first == 2});
  c.push_back({"determinant is 1 exactly", m.det() == RingElement::one(m.a.ring())});
  c.push_back({"lower-left entry is 0 mod N", divisible_by(m.c, N)});
  c.push_back({"reduction mod 2 equals R^(n/4) mod 2", reduce_mat(m, table.ring()) == target});
  int delta = -1;
  try {
    delta = table.delta(w);
  } catch (const NotInImage&) {
  }
  c.push_back({"delta = n/4 mod n' and delta != 0", delta == (n / 4) % np && delta != 0});
  return c;
}

inline std::vector<Condition> kappa_conditions(int n, std::uint64_t N, const ExactMat& m) {
  const auto cls = classify_congruence(n);
  std::vector<Condition> c;
  c.push_back({"n = 2m with m odd having at least two prime factors", !cls.kappa_congruence});
  c.push_back({"N is a prime power", prime_power(N).has_value()});
  c.push_back({"determinant is 1 exactly", m.det() == RingElement::one(m.a.ring())});
  c.push_back({"upper-left entry is 0 mod N", divisible_by(m.a, N)});
  c.push_back({"lower-left entry is a unit mod N", is_unit_mod(m.c, N)});
  return c;
}

inline std::string delta_interpretation(int n, std::uint64_t N) {
  return "gamma(inf) = [a : c] = [1 : 0] = inf in P^1(O/" + std::to_string(N) + ") since c = 0 mod N, but delta(gamma(inf)) = " +
         std::to_string(n / 4) + " != 0 = delta(inf) in Z/" + std::to_string(n_prime(n)) +
         "; delta does not factor through P^1(O/" + std::to_string(N) + ")";
}

inline std::string kappa_interpretation(std::uint64_t N) {
  return "gamma(inf) = [a : c] = [0 : 1] = 0 in P^1(O/" + std::to_string(N) +
         ") since a = 0 mod N and c is a unit, but kappa(gamma(inf)) = 0 != 1 = kappa(0); kappa does not factor through P^1(O/" +
         std::to_string(N) + "). Witnesses at coprime prime powers combine through the product structure of the closure";
}

inline WitnessCertificate finish_certificate(const GeneratorSet& gens, std::string kind, std::uint64_t N, Word w) {
  ExactMat exact = evaluate_word(gens, w);
  ModMat mod = reduce_mat(exact, QuotientRing::over(gens.ring, N));
  WitnessCertificate cert{gens.n, N, std::move(kind), std::move(w), std::move(exact), std::move(mod), {}, {}};
  if (cert.kind == "delta") {
    cert.conditions = delta_conditions(gens.n, N, cert.exact, cert.word);
    cert.interpretation = delta_interpretation(gens.n, N);
  } else {
    cert.conditions = kappa_conditions(gens.n, N, cert.exact);
    cert.interpretation = kappa_interpretation(N);
  }
  return cert;
}

}  // namespace detail

/// Searches the image mod 2^a for the first element (in BFS order) with
/// lower-left entry 0 whose reduction mod 2 is R^{n/4}.
inline WitnessCertificate delta_witness(int n, unsigned a, std::uint64_t cap = kDefaultCap) {
  if (n < 3) throw PreconditionViolated("delta_witness: n must be >= 3");
  if (classify_congruence(n).delta_congruence)
    throw PreconditionViolated("delta is a congruence invariant for n = " + std::to_string(n) + "; no witness exists");
  if (a < 1 || a > 31) throw PreconditionViolated("delta_witness: level exponent must be in [1, 31]");
  const std::uint64_t N = std::uint64_t{1} << a;
  const auto gens = generators(n);
  const auto ring = QuotientRing::over(gens.ring, N);
  const int d = ring->degree();
  const auto target = flatten(reduce_mat(gens.R.pow(static_cast<std::uint64_t>(n / 4)), QuotientRing::over(gens.ring, 2)));
  ClosureOptions opt;
  opt.cap = cap;
  opt.stop_when = [&](const std::uint32_t* c) {
    for (int j = 2 * d; j < 3 * d; ++j)
      if (c[j] != 0) return false;
    for (int j = 0; j < 4 * d; ++j)
      if (c[j] % 2 != target[static_cast<std::size_t>(j)]) return false;
    return true;
  };
  const auto closure = close_image(gens, ring, opt);
  if (!closure.found()) throw NotFound("delta_witness: no element found mod " + std::to_string(N));
  return detail::finish_certificate(gens, "delta", N, closure.word(*closure.found()));
}

/// Searches the image mod N (a prime power) for the first element with
/// upper-left entry 0 and lower-left entry a unit.
inline WitnessCertificate kappa_witness(int n, std::uint64_t N, std::uint64_t cap = kDefaultCap) {
  if (n < 3) throw PreconditionViolated("kappa_witness: n must be >= 3");
  if (classify_congruence(n).kappa_congruence)
    throw PreconditionViolated("kappa is a congruence invariant for n = " + std::to_string(n) + "; no witness exists");
  const auto pp = prime_power(N);
  if (N < 2 || !pp) throw PreconditionViolated("kappa_witness: N must be a prime power");
  const auto gens = generators(n);
  const auto ring = QuotientRing::over(gens.ring, N);
  const int d = ring->degree();
  const FpPoly psi(pp->first, gens.ring->defining_poly());
  ClosureOptions opt;
  opt.cap = cap;
  opt.stop_when = [&](const std::uint32_t* c) {
    for (int j = 0; j < d; ++j)
      if (c[j] != 0) return false;
    std::vector<std::uint64_t> lower(c + 2 * d, c + 3 * d);
    const FpPoly cl(pp->first, std::move(lower));
    return !cl.is_zero() && gcd(cl, psi).is_one();
  };
  const auto closure = close_image(gens, ring, opt);
  if (!closure.found()) throw NotFound("kappa_witness: no element found mod " + std::to_string(N));
  return detail::finish_certificate(gens, "kappa", N, closure.word(*closure.found()));
}

// ---------------------------------------------------------------------------
// JSON and verification

inline nlohmann::json to_json(const WitnessCertificate& c) {
  auto conds = nlohmann::json::array();
  for (const auto& k : c.conditions) conds.push_back({{"desc", k.desc}, {"pass", k.pass}});
  return {{"n", c.n},
          {"N", c.N},
          {"kind", c.kind},
          {"word", word_to_json(c.word)},
          {"matrix_exact", mat_to_json(c.exact)},
          {"matrix_modN", mat_to_json(c.mod)},
          {"conditions", conds},
          {"interpretation", c.interpretation}};
}

inline WitnessCertificate certificate_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const auto N = j.at("N").get<std::uint64_t>();
  auto kind = j.at("kind").get<std::string>();
  if (kind != "delta" && kind != "kappa") throw std::invalid_argument("certificate: unknown kind " + kind);
  const auto ring = NumberRing::real(n);
  const auto qring = QuotientRing::over(ring, N);
  const auto& ex = j.at("matrix_exact");
  const auto& md = j.at("matrix_modN");
  if (ex.size() != 4 || md.size() != 4) throw std::invalid_argument("certificate: matrices need 4 entries");
  auto exact_entry = [&](const nlohmann::json& e) {
    std::vector<BigInt> v;
    for (const auto& s : e) v.emplace_back(s.get<std::string>());
    if (v.size() != static_cast<std::size_t>(ring->degree())) throw std::invalid_argument("certificate: wrong entry length");
    return RingElement(ring, std::move(v));
  };
  auto mod_entry = [&](const nlohmann::json& e) { return QuotientElement(qring, e.get<std::vector<std::uint32_t>>()); };
  std::vector<Condition> conds;
  for (const auto& k : j.at("conditions")) conds.push_back({k.at("desc").get<std::string>(), k.at("pass").get<bool>()});
  return {n,
          N,
          std::move(kind),
          word_from_json(j.at("word")),
          {exact_entry(ex[0]), exact_entry(ex[1]), exact_entry(ex[2]), exact_entry(ex[3])},
          {mod_entry(md[0]), mod_entry(md[1]), mod_entry(md[2]), mod_entry(md[3])},
          std::move(conds),
          j.value("interpretation", "")};
}

struct VerificationResult {
  bool ok = false;
  std::vector<std::string> problems;
};

/// Re-evaluates the word exactly, compares both matrices and recomputes
/// every condition; all conditions must hold.
inline VerificationResult verify_certificate_detailed(const WitnessCertificate& c) {
  VerificationResult r;
  const auto gens = generators(c.n);
  const ExactMat exact = evaluate_word(gens, c.word);
  if (!(exact == c.exact)) r.problems.push_back("matrix_exact differs from the evaluated word");
  if (!(reduce_mat(exact, QuotientRing::over(gens.ring, c.N)) == c.mod))
    r.problems.push_back("matrix_modN differs from the reduced word");
  const auto expect = c.kind == "delta" ? detail::delta_conditions(c.n, c.N, exact, c.word)
                                        : detail::kappa_conditions(c.n, c.N, exact);
  if (expect != c.conditions) r.problems.push_back("recorded conditions differ from recomputed conditions");
  for (const auto& k : expect)
    if (!k.pass) r.problems.push_back("condition fails: " + k.desc);
  r.ok = r.problems.empty();
  return r;
}

inline bool verify_certificate(const WitnessCertificate& c) { return verify_certificate_detailed(c).ok; }

}  // namespace trigroup
