#pragma once

// Predicted and computed indices of the closure of the triangle group in
// SL_2 of the completed ring, assembled from local indices at 2 and at odd
// primes.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "trigroup/closure.hpp"
#include "trigroup/errors.hpp"
#include "trigroup/local_data.hpp"
#include "trigroup/mat2.hpp"

namespace trigroup {

/// Largest image enumerated for optional cross-checks (stabilization, full
/// level p, spot checks). Required computations use the caller's cap.
inline constexpr std::uint64_t kCheckBudget = std::uint64_t{1} << 21;

enum class ExceptionTag { None, PowerOfTwo, FiveTimesPowerOfThree, TwoTimesOddPrimePower };

inline const char* tag_name(ExceptionTag t) {
  switch (t) {
    case ExceptionTag::None: return "none";
    case ExceptionTag::PowerOfTwo: return "power_of_two";
    case ExceptionTag::FiveTimesPowerOfThree: return "five_times_power_of_three";
    case ExceptionTag::TwoTimesOddPrimePower: return "two_times_odd_prime_power";
  }
  return "?";
}

struct ExceptionalCase {
  ExceptionTag tag = ExceptionTag::None;
  std::uint64_t p = 0;
  std::uint64_t extra_factor = 1;
};

inline bool is_power_of(int n, int p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

inline int n_prime(int n) { return n % 2 == 0 ? n / 2 : n; }

/// The three families are disjoint: 2^k, 5 * 3^k (k >= 0), 2 p^k (p odd, k >= 1).
inline ExceptionalCase exceptional_case(int n) {
  if (n < 3) throw std::invalid_argument("exceptional_case: n must be >= 3");
  if (is_power_of(n, 2)) return {ExceptionTag::PowerOfTwo, 2, 2};
  if (n % 5 == 0 && is_power_of(n / 5, 3)) return {ExceptionTag::FiveTimesPowerOfThree, 3, 6};
  if (n % 2 == 0 && (n / 2) % 2 == 1) {
    const auto f = factor_integer(static_cast<std::uint64_t>(n / 2));
    if (f.size() == 1) {
      const std::uint64_t p = f.front().first;
      return {ExceptionTag::TwoTimesOddPrimePower, p, p * p - 1};
    }
  }
  return {};
}

/// |SL_2(O/2)| / (2n') * |O/2| / 2 * extra factor, divided exactly.
inline BigInt predicted_index(int n) {
  const BigInt num = sl2_order(n, 2).value * ring_card(n, 2) * exceptional_case(n).extra_factor;
  const BigInt den = 4 * n_prime(n);
  if (num % den != 0) throw std::logic_error("predicted_index: inexact division");
  return num / den;
}

inline BigInt exact_quotient(const BigInt& a, const BigInt& b, const std::string& what) {
  if (b == 0 || a % b != 0) throw std::logic_error(what + ": image order does not divide the group order");
  return a / b;
}

struct SubgroupIndex {
  std::uint64_t modulus = 0;
  std::string ring;
  BigInt group_order;
  std::uint64_t image_order = 0;
  BigInt index;
};

/// Index of the image of the triangle group in SL_2 of a quotient ring
/// whose SL_2 order is supplied.
inline SubgroupIndex image_index(const GeneratorSet& gens, const QuotientPtr& ring, const BigInt& group_order,
                                 std::uint64_t cap) {
  ClosureOptions opt;
  opt.cap = cap;
  const auto c = close_image(gens, ring, opt);
  SubgroupIndex r;
  r.modulus = ring->modulus();
  r.ring = ring->describe();
  r.group_order = group_order;
  r.image_order = c.order();
  r.index = exact_quotient(group_order, BigInt(c.order()), r.ring);
  return r;
}

inline SubgroupIndex subgroup_index(int n, std::uint64_t N, std::uint64_t cap = kDefaultCap) {
  const auto gens = generators(n);
  return image_index(gens, QuotientRing::over(gens.ring, N), sl2_order(n, N).value, cap);
}

// ---------------------------------------------------------------------------
// 2-local

struct TwoLocal {
  std::uint64_t level = 0;
  BigInt index;
  std::uint64_t image_order = 0;
  /// Index at level 4 when the working level is 8 (n = 2^k).
  std::optional<BigInt> level4_index;
  /// Index one level higher, when that image fits the check budget.
  std::optional<SubgroupIndex> stabilization;
  bool stable = true;
  BigInt closed_form;
  bool closed_form_ok = false;
};

/// Level 4 when n is not a power of 2, level 8 when it is.
inline TwoLocal two_local_index(int n, std::uint64_t cap = kDefaultCap, std::uint64_t budget = kCheckBudget) {
  const auto gens = generators(n);
  const auto [k, m] = split_two_power(n);
  TwoLocal out;
  out.level = m > 1 ? 4 : 8;
  auto main = image_index(gens, QuotientRing::over(gens.ring, out.level), sl2_order(n, out.level).value, cap);
  out.index = main.index;
  out.image_order = main.image_order;
  if (m == 1) out.level4_index = subgroup_index(n, 4, cap).index;

  const std::uint64_t up = out.level * 2;
  const BigInt next_image = BigInt(out.image_order) * big_pow(ring_card(n, 2), 3);
  if (next_image <= budget) {
    out.stabilization = image_index(gens, QuotientRing::over(gens.ring, up), sl2_order(n, up).value, cap);
    out.stable = out.stabilization->index == out.index;
  }

  if (m > 1) {
    out.closed_form = exact_quotient(sl2_order(n, 2).value * ring_card(n, 2), BigInt(4 * n_prime(n)), "closed form");
  } else {
    out.closed_form = 3 * big_pow(BigInt(2), static_cast<unsigned>(n - k - 2));
  }
  out.closed_form_ok = out.closed_form == out.index;
  return out;
}

// ---------------------------------------------------------------------------
// Depth-two elements at odd primes

struct PrimeDepth {
  std::string factor;
  bool in_p = false;
  bool in_p2 = false;
};

struct DepthTwoReport {
  int n = 0;
  std::uint64_t p = 0;
  std::string element;
  Word word;
  std::vector<PrimeDepth> primes;
  /// gamma = I mod p and gamma != I mod p^2 as integer congruences.
  bool literal_mod_p = false;
  bool literal_not_mod_p2 = false;
  /// gamma = I mod P and gamma != I mod P^2 for every prime P above p.
  bool verified = false;
};

/// n = p^k m with p odd, p | n, m != 2: gamma = R^m for m > 2, and
/// gamma = V^{p^2 - 1} with V = RU for m = 1.
inline DepthTwoReport depth_two_check(int n, std::uint64_t p) {
  if (p % 2 == 0 || !is_prime(p) || n % static_cast<int>(p) != 0)
    throw PreconditionViolated("depth_two_check: p must be an odd prime dividing n");
  int m = n;
  while (m % static_cast<int>(p) == 0) m /= static_cast<int>(p);
  if (m == 2) throw PreconditionViolated("depth_two_check: n = 2 p^k has no depth-two element");
  const auto gens = generators(n);
  DepthTwoReport rep;
  rep.n = n;
  rep.p = p;
  if (m > 2) {
    rep.element = "R^" + std::to_string(m);
    rep.word = word_power({Letter::R}, m);
  } else {
    rep.element = "(RU)^" + std::to_string(p * p - 1);
    rep.word = word_power({Letter::R, Letter::U}, static_cast<long long>(p * p - 1));
  }
  const ExactMat base = m > 2 ? gens.R : gens.R * gens.U;
  const ExactMat gamma = base.pow(m > 2 ? static_cast<std::uint64_t>(m) : p * p - 1);
  const auto one = RingElement::one(gens.ring);
  const RingElement entries[4] = {gamma.a - one, gamma.b, gamma.c, gamma.d - one};

  const BigInt p2 = BigInt(p) * p;
  rep.literal_mod_p = true;
  rep.literal_not_mod_p2 = false;
  for (const auto& e : entries)
    for (const auto& c : e.coeffs()) {
      if (c % p != 0) rep.literal_mod_p = false;
      if (c % p2 != 0) rep.literal_not_mod_p2 = true;
    }

  const auto s = splitting_data(n, p);
  rep.verified = !s.factors.empty();
  for (const auto& P : primes_above(s)) {
    const auto l1 = prime_power_lattice(gens.ring, P, 1);
    const auto l2 = prime_power_lattice(gens.ring, P, 2);
    PrimeDepth d{P.g.lift().to_string(), true, true};
    for (const auto& e : entries) {
      if (!l1.contains(e.coeffs())) d.in_p = false;
      if (!l2.contains(e.coeffs())) d.in_p2 = false;
    }
    rep.verified = rep.verified && d.in_p && !d.in_p2;
    rep.primes.push_back(std::move(d));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Odd-local

struct OddLocal {
  std::uint64_t p = 0;
  /// "exceptional", "generic" or "spot".
  std::string role;
  ExceptionTag family = ExceptionTag::None;
  /// Image on the product of residue fields above p.
  SubgroupIndex residue;
  /// Image at full level p, when it fits the check budget.
  std::optional<SubgroupIndex> full_level;
  std::optional<DepthTwoReport> depth_two;
  /// Direct image at level p^2, used when the designated depth-two element
  /// is trivial and SL_2(O/p^2) fits the check budget.
  std::optional<SubgroupIndex> second_level;
  /// For n = 2p^k: the image is the cyclic group generated by U.
  std::optional<bool> generated_by_u;
  std::uint64_t u_order = 0;
  /// Local index used in the product: full level when computed, else the
  /// residue index.
  BigInt index;
  std::uint64_t level = 0;
  bool consistent = true;
  bool counted = true;
};

inline OddLocal odd_local_index(int n, std::uint64_t p, std::uint64_t cap = kDefaultCap,
                                std::uint64_t budget = kCheckBudget) {
  if (p % 2 == 0 || !is_prime(p)) throw PreconditionViolated("odd_local_index: p must be an odd prime");
  const auto gens = generators(n);
  const auto ex = exceptional_case(n);
  const auto s = splitting_data(n, p);
  OddLocal out;
  out.p = p;
  out.level = p;
  const bool exceptional = ex.tag != ExceptionTag::None && ex.tag != ExceptionTag::PowerOfTwo && ex.p == p;
  out.family = exceptional ? ex.tag : ExceptionTag::None;
  out.role = exceptional ? "exceptional" : (n % static_cast<int>(p) == 0 ? "generic" : "spot");

  const auto rring = residue_ring(gens.ring, s);
  out.residue = image_index(gens, rring, residue_sl2_order(s), cap);
  out.index = out.residue.index;

  const BigInt full_order = sl2_order(n, p).value;
  if (full_order / out.residue.index <= budget) {
    out.full_level = image_index(gens, QuotientRing::over(gens.ring, p), full_order, cap);
    out.index = out.full_level->index;
    out.consistent = out.full_level->index == out.residue.index;
  }

  if (out.family == ExceptionTag::TwoTimesOddPrimePower) {
    const auto U = reduce_mat(gens.U, rring);
    ModMat pw = ModMat::identity(rring);
    ClosureOptions opt;
    opt.cap = cap;
    const auto c = close_image(gens, rring, opt);
    bool all_in = true;
    std::uint64_t order = 0;
    do {
      all_in = all_in && c.contains(pw);
      pw = pw * U;
      ++order;
    } while (!(pw == ModMat::identity(rring)) && order <= c.order());
    out.u_order = order;
    out.generated_by_u = all_in && order == c.order();
  }

  if (out.role == "generic" || (exceptional && out.family == ExceptionTag::FiveTimesPowerOfThree &&
                                n % static_cast<int>(p) == 0)) {
    out.depth_two = depth_two_check(n, p);
    bool deep = out.depth_two->verified;
    const BigInt sq_order = sl2_order(n, p * p).value;
    if (!deep && sq_order <= budget) {
      out.second_level = image_index(gens, QuotientRing::over(gens.ring, p * p), sq_order, cap);
      deep = out.second_level->index == 1;
    }
    out.consistent = out.consistent && deep;
  }
  return out;
}

/// Odd primes whose local index enters the product: odd p | n, and p = 3
/// for n = 5 * 3^k.
inline std::vector<std::uint64_t> index_primes(int n) {
  std::vector<std::uint64_t> ps;
  for (const auto& [p, a] : factor_integer(static_cast<std::uint64_t>(n)))
    if (p != 2) ps.push_back(p);
  if (exceptional_case(n).tag == ExceptionTag::FiveTimesPowerOfThree && n % 3 != 0) ps.insert(ps.begin(), 3);
  return ps;
}

struct IndexReport {
  int n = 0;
  BigInt predicted;
  ExceptionalCase exceptional;
  std::optional<TwoLocal> two_local;
  std::vector<OddLocal> odd_local;
  std::vector<OddLocal> spot_checks;
  std::optional<BigInt> computed;
  bool match = false;
  bool checks_ok = false;
  std::string error;
  double seconds = 0;
};

inline IndexReport index_report(int n, std::uint64_t cap = kDefaultCap, bool spot_checks = true,
                                std::uint64_t budget = kCheckBudget) {
  const auto start = std::chrono::steady_clock::now();
  IndexReport rep;
  rep.n = n;
  rep.predicted = predicted_index(n);
  rep.exceptional = exceptional_case(n);
  try {
    rep.two_local = two_local_index(n, cap, budget);
    BigInt computed = rep.two_local->index;
    bool ok = rep.two_local->stable && rep.two_local->closed_form_ok;
    for (auto p : index_primes(n)) {
      rep.odd_local.push_back(odd_local_index(n, p, cap, budget));
      computed *= rep.odd_local.back().index;
      ok = ok && rep.odd_local.back().consistent;
    }
    if (spot_checks) {
      const auto counted = index_primes(n);
      for (std::uint64_t p : {3u, 5u, 7u}) {
        if (n % static_cast<int>(p) == 0 || std::find(counted.begin(), counted.end(), p) != counted.end()) continue;
        const auto s = splitting_data(n, p);
        if (residue_sl2_order(s) > budget) continue;
        auto spot = odd_local_index(n, p, cap, budget);
        spot.counted = false;
        ok = ok && spot.consistent && spot.index == 1;
        rep.spot_checks.push_back(std::move(spot));
      }
    }
    rep.computed = computed;
    rep.match = computed == rep.predicted;
    rep.checks_ok = ok;
  } catch (const CapExceeded& e) {
    rep.error = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline std::vector<IndexReport> verify_table(int from, int to, std::uint64_t cap = kDefaultCap) {
  std::vector<IndexReport> out;
  for (int n = from; n <= to; ++n) out.push_back(index_report(n, cap));
  return out;
}

// ---------------------------------------------------------------------------
// 2-adic structure at levels 2 and 4

struct TwoAdicStructure {
  int n = 0;
  std::uint64_t image2 = 0;
  std::uint64_t image4 = 0;
  /// Elements of the mod-4 image that are I mod 2.
  std::uint64_t kernel = 0;
  BigInt expected_kernel;
  /// Scalar elements of the mod-4 image that are I mod 2.
  std::vector<ModMat> diagonal;
  bool diagonal_is_pm_identity = false;
};

inline TwoAdicStructure two_adic_structure(int n, std::uint64_t cap = kDefaultCap) {
  const auto gens = generators(n);
  const auto r4 = QuotientRing::over(gens.ring, 4);
  ClosureOptions opt;
  opt.cap = cap;
  const auto c2 = close_image(gens, QuotientRing::over(gens.ring, 2), opt);
  const auto c4 = close_image(gens, r4, opt);
  TwoAdicStructure out;
  out.n = n;
  out.image2 = c2.order();
  out.image4 = c4.order();
  out.expected_kernel = big_pow(BigInt(2), static_cast<unsigned>(2 * gens.ring->degree() + 1));
  const int d = gens.ring->degree();
  std::vector<std::uint32_t> cf(static_cast<std::size_t>(4 * d));
  for (std::uint32_t i = 0; i < c4.order(); ++i) {
    c4.unpack(i, cf.data());
    bool trivial_mod2 = true;
    for (int j = 0; j < 4 * d; ++j) {
      const std::uint32_t want = (j == 0 || j == 3 * d) ? 1u : 0u;
      if (cf[static_cast<std::size_t>(j)] % 2 != want) trivial_mod2 = false;
    }
    if (!trivial_mod2) continue;
    ++out.kernel;
    bool scalar = true;
    for (int j = 0; j < d; ++j) {
      if (cf[static_cast<std::size_t>(d + j)] != 0 || cf[static_cast<std::size_t>(2 * d + j)] != 0) scalar = false;
      if (cf[static_cast<std::size_t>(j)] != cf[static_cast<std::size_t>(3 * d + j)]) scalar = false;
    }
    if (scalar) out.diagonal.push_back(c4.element(i));
  }
  const auto I = ModMat::identity(r4);
  out.diagonal_is_pm_identity = out.diagonal.size() == 2 &&
                                ((out.diagonal[0] == I && out.diagonal[1] == -I) ||
                                 (out.diagonal[0] == -I && out.diagonal[1] == I));
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const SubgroupIndex& s) {
  return {{"ring", s.ring}, {"modulus", s.modulus}, {"group_order", s.group_order.str()},
          {"image_order", s.image_order}, {"index", s.index.str()}};
}

inline nlohmann::json to_json(const DepthTwoReport& r) {
  auto primes = nlohmann::json::array();
  for (const auto& d : r.primes) primes.push_back({{"prime", "(" + std::to_string(r.p) + ", " + d.factor + ")"},
                                                   {"identity_mod_P", d.in_p}, {"identity_mod_P2", d.in_p2}});
  return {{"n", r.n}, {"p", r.p}, {"element", r.element}, {"word_length", r.word.size()}, {"primes", primes},
          {"identity_mod_p", r.literal_mod_p}, {"nonidentity_mod_p2", r.literal_not_mod_p2},
          {"verified", r.verified}};
}

inline nlohmann::json to_json(const OddLocal& o) {
  nlohmann::json j{{"p", o.p}, {"role", o.role}, {"family", tag_name(o.family)}, {"level", o.level},
                   {"residue", to_json(o.residue)}, {"index", o.index.str()}, {"consistent", o.consistent}};
  if (o.full_level) j["full_level"] = to_json(*o.full_level);
  if (o.depth_two) j["depth_two"] = to_json(*o.depth_two);
  if (o.second_level) j["second_level"] = to_json(*o.second_level);
  if (o.generated_by_u) {
    j["generated_by_U"] = *o.generated_by_u;
    j["U_order"] = o.u_order;
  }
  return j;
}

inline nlohmann::json to_json(const TwoLocal& t) {
  nlohmann::json j{{"level", t.level},       {"index", t.index.str()},           {"image_order", t.image_order},
                   {"closed_form", t.closed_form.str()}, {"closed_form_ok", t.closed_form_ok}, {"stable", t.stable}};
  if (t.level4_index) j["level4_index"] = t.level4_index->str();
  if (t.stabilization) j["stabilization"] = to_json(*t.stabilization);
  return j;
}

inline nlohmann::json to_json(const IndexReport& r, bool timing = true) {
  nlohmann::json j{{"n", r.n},
                   {"predicted", r.predicted.str()},
                   {"exceptional", {{"tag", tag_name(r.exceptional.tag)}, {"extra_factor", r.exceptional.extra_factor}}},
                   {"match", r.match},
                   {"checks_ok", r.checks_ok}};
  if (r.two_local) j["two_local"] = to_json(*r.two_local);
  auto odd = nlohmann::json::array();
  for (const auto& o : r.odd_local) odd.push_back(to_json(o));
  j["odd_local"] = odd;
  auto spot = nlohmann::json::array();
  for (const auto& o : r.spot_checks) spot.push_back(to_json(o));
  j["spot_checks"] = spot;
  j["computed"] = r.computed ? nlohmann::json(r.computed->str()) : nlohmann::json(nullptr);
  if (!r.error.empty()) j["error"] = r.error;
  if (timing) j["timing"] = {{"seconds", r.seconds}};
  return j;
}

/// "4" or "8;3:3;5:5" style summary of the levels used.
inline std::string levels_summary(const IndexReport& r) {
  std::string s = r.two_local ? std::to_string(r.two_local->level) : "?";
  for (const auto& o : r.odd_local) s += ";" + std::to_string(o.p) + ":" + std::to_string(o.level);
  return s;
}

}  // namespace trigroup
