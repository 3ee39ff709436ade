#include <gtest/gtest.h>

#include <random>
#include <set>

#include "trigroup/invariants.hpp"

using namespace trigroup;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> dist(0, 5);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Letter>(dist(rng)));
  return w;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Congruence rule recomputed from the statement: delta is congruence iff
/// 4 does not divide n or n is a power of 2; kappa fails iff n = 2m with m
/// odd having at least two distinct prime factors.
std::pair<bool, bool> expected_classification(int n) {
  const bool pow2 = (n & (n - 1)) == 0;
  const bool delta = n % 4 != 0 || pow2;
  bool kappa = true;
  if (n % 2 == 0 && (n / 2) % 2 == 1) {
    int m = n / 2, distinct = 0;
    for (int p = 3; p <= m; p += 2) {
      if (m % p != 0) continue;
      ++distinct;
      while (m % p == 0) m /= p;
    }
    kappa = distinct < 2;
  }
  return {delta, kappa};
}

const WitnessCertificate& delta_12_4() {
  static const WitnessCertificate c = delta_witness(12, 2);
  return c;
}

}  // namespace

TEST(Dihedral, Examples) {
  const DihedralTable table(12);
  const auto& g = table.gens();
  EXPECT_EQ(table.decompose(reduce_mat(g.R, table.ring())), (DihedralElement{1, 0}));
  EXPECT_EQ(table.decompose(reduce_mat(g.T, table.ring())), (DihedralElement{0, 1}));
  EXPECT_EQ(table.decompose(ModMat::identity(table.ring())), (DihedralElement{0, 0}));
  const auto zero = QuotientElement::zero(table.ring());
  EXPECT_THROW(table.decompose(ModMat{zero, zero, zero, zero}), NotInImage);
}

TEST(Dihedral, BijectionWithLabels) {
  EXPECT_THROW(DihedralTable(4), PreconditionViolated);
  for (int n = 3; n <= 24; ++n) {
    if (n == 4) continue;
    const DihedralTable table(n);
    const int np = n_prime(n);
    std::set<std::pair<int, int>> labels;
    for (std::uint32_t i = 0; i < table.closure().order(); ++i) {
      const auto e = table.decompose(table.closure().element(i));
      labels.insert({e.rotation, e.reflection});
      EXPECT_EQ(table.matrix(e), table.closure().element(i));
    }
    EXPECT_EQ(labels.size(), static_cast<std::size_t>(2 * np)) << "n=" << n;
    EXPECT_EQ(labels.begin()->first, 0);
    EXPECT_EQ(labels.rbegin()->first, np - 1);
  }
}

TEST(Dihedral, DecompositionIsHomomorphism) {
  std::mt19937_64 rng(31);
  for (int n : {5, 8, 12, 20, 30}) {
    const DihedralTable table(n);
    for (int t = 0; t < 50; ++t) {
      const auto w1 = random_word(rng, 8), w2 = random_word(rng, 8);
      const auto m1 = evaluate_word_mod(table.gens(), w1, table.ring());
      const auto m2 = evaluate_word_mod(table.gens(), w2, table.ring());
      EXPECT_EQ(table.decompose(m1 * m2), table.compose(table.decompose(m1), table.decompose(m2)));
    }
  }
}

TEST(Delta, Examples) {
  const DihedralTable t12(12);
  EXPECT_EQ(delta_of_element(t12, {Letter::R}), 1);
  EXPECT_EQ(delta_of_element(t12, {Letter::T}), 0);
  EXPECT_EQ(delta_of_element(t12, word_power({Letter::R}, 3)), 3);
  EXPECT_NE(delta_of_element(t12, word_power({Letter::R}, 3)) % 6, 0);
}

TEST(Delta, DependsOnlyOnModTwoClass) {
  std::mt19937_64 rng(32);
  for (int n : {12, 20, 7}) {
    const DihedralTable table(n);
    int m = n;
    while (m % 2 == 0) m /= 2;
    // T^2 and V_1 are trivial mod 2
    Word v = word_power({Letter::R}, (m + 1) / 2);
    v = concat(v, {Letter::T, Letter::T});
    v = concat(v, word_power({Letter::R}, -((m + 1) / 2)));
    v = concat(v, {Letter::Uinv, Letter::Uinv});
    for (int t = 0; t < 30; ++t) {
      const auto w = random_word(rng, 10);
      EXPECT_EQ(table.delta(w), table.delta(concat(w, {Letter::T, Letter::T})));
      EXPECT_EQ(table.delta(w), table.delta(concat(w, v)));
      EXPECT_EQ(table.delta(w), table.delta(concat(v, w)) ) << "n=" << n;
    }
  }
}

TEST(Delta, NotAHomomorphism) {
  // delta(TR) = -1 while delta(T) + delta(R) = 1
  const DihedralTable table(12);
  const int lhs = table.delta({Letter::T, Letter::R});
  const int rhs = (table.delta({Letter::T}) + table.delta({Letter::R})) % 6;
  EXPECT_EQ(lhs, 5);
  EXPECT_EQ(rhs, 1);
  EXPECT_NE(lhs, rhs);
  // ... but it is additive modulo 2
  EXPECT_EQ(lhs % 2, rhs % 2);
}

TEST(Kappa, Translates) {
  EXPECT_EQ(kappa_of_translate(10, {Letter::T}, CuspBase::Infinity), 0);
  EXPECT_EQ(kappa_of_translate(10, {Letter::T}, CuspBase::Zero), 1);
  EXPECT_EQ(kappa_of_translate(5, {}, CuspBase::Infinity), 0);
  EXPECT_THROW(kappa_of_translate(5, {}, CuspBase::Zero), OddN);
}

TEST(Classification, Examples) {
  auto c = classify_congruence(12);
  EXPECT_FALSE(c.delta_congruence);
  EXPECT_TRUE(c.kappa_congruence);
  c = classify_congruence(30);
  EXPECT_TRUE(c.delta_congruence);
  EXPECT_FALSE(c.kappa_congruence);
  c = classify_congruence(16);
  EXPECT_TRUE(c.delta_congruence);
  EXPECT_TRUE(c.kappa_congruence);
}

TEST(Classification, AgreesWithRuleUpTo64) {
  for (int n = 3; n <= 64; ++n) {
    const auto [delta, kappa] = expected_classification(n);
    const auto c = classify_congruence(n);
    EXPECT_EQ(c.delta_congruence, delta) << "n=" << n;
    EXPECT_EQ(c.kappa_congruence, kappa) << "n=" << n;
  }
}

TEST(DeltaWitness, LevelFourForTwelve) {
  const auto& c = delta_12_4();
  EXPECT_EQ(c.N, 4u);
  EXPECT_EQ(c.kind, "delta");
  EXPECT_TRUE(divisible_by(c.exact.c, 4));
  EXPECT_EQ(DihedralTable(12).delta(c.word), 3);
  EXPECT_TRUE(verify_certificate(c));
  for (const auto& k : c.conditions) EXPECT_TRUE(k.pass) << k.desc;
}

TEST(DeltaWitness, LevelSixteenForTwelve) {
  const auto c = delta_witness(12, 4);
  EXPECT_EQ(c.N, 16u);
  EXPECT_TRUE(divisible_by(c.exact.c, 16));
  EXPECT_EQ(DihedralTable(12).delta(c.word), 3);
  EXPECT_TRUE(verify_certificate(c));
}

TEST(DeltaWitness, TwentyAtLevelFour) {
  const auto c = delta_witness(20, 2);
  EXPECT_TRUE(divisible_by(c.exact.c, 4));
  EXPECT_EQ(DihedralTable(20).delta(c.word), 5);
  EXPECT_TRUE(verify_certificate(c));
}

TEST(DeltaWitness, ExistsWheneverDeltaFailsCongruence) {
  for (int n : {12, 20, 24, 28}) {
    if (classify_congruence(n).delta_congruence) continue;
    for (unsigned a : {1u, 2u, 3u}) {
      const auto c = delta_witness(n, a);
      EXPECT_TRUE(verify_certificate(c)) << "n=" << n << " a=" << a;
    }
  }
}

TEST(DeltaWitness, RefusesCongruenceCases) {
  EXPECT_THROW(delta_witness(16, 3), PreconditionViolated);
  EXPECT_THROW(delta_witness(6, 2), PreconditionViolated);
  EXPECT_THROW(delta_witness(7, 2), PreconditionViolated);
}

TEST(DeltaWitness, CapExceeded) { EXPECT_THROW(delta_witness(12, 4, 10), CapExceeded); }

TEST(KappaWitness, ThirtyAtPrimePowers) {
  for (std::uint64_t N : {2u, 4u, 5u}) {
    const auto c = kappa_witness(30, N);
    EXPECT_EQ(c.N, N);
    EXPECT_TRUE(divisible_by(c.exact.a, BigInt(N))) << "N=" << N;
    EXPECT_TRUE(is_unit_mod(c.exact.c, N)) << "N=" << N;
    EXPECT_TRUE(verify_certificate(c)) << "N=" << N;
  }
}

TEST(KappaWitness, SeedAtLevelTwo) {
  // R^8 for n = 30 has upper-left entry 0 mod 2
  const auto g = generators(30);
  const auto m = reduce_mat(g.R.pow(8), QuotientRing::over(g.ring, 2));
  EXPECT_TRUE(m.a.is_zero());
}

TEST(KappaWitness, RefusesCongruenceCases) {
  EXPECT_THROW(kappa_witness(6, 2), PreconditionViolated);
  EXPECT_THROW(kappa_witness(10, 2), PreconditionViolated);
  EXPECT_THROW(kappa_witness(12, 2), PreconditionViolated);
  EXPECT_THROW(kappa_witness(30, 6), PreconditionViolated);
}

TEST(Certificate, JsonRoundTrip) {
  for (const auto& c : {delta_12_4(), kappa_witness(30, 4)}) {
    const auto text = to_json(c).dump();
    const auto back = certificate_from_json(nlohmann::json::parse(text));
    EXPECT_TRUE(verify_certificate(back));
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

TEST(Certificate, JsonShape) {
  const auto j = to_json(delta_12_4());
  for (const char* key : {"n", "N", "kind", "word", "matrix_exact", "matrix_modN", "conditions"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("matrix_exact").size(), 4u);
  EXPECT_TRUE(j.at("matrix_exact")[0][0].is_string());
  for (const auto& letter : j.at("word")) EXPECT_NE(std::string("TtUuRr").find(letter.get<std::string>()), std::string::npos);
}

TEST(Certificate, TamperedCoefficientFails) {
  auto j = to_json(delta_12_4());
  const auto old = BigInt(j["matrix_exact"][2][0].get<std::string>());
  j["matrix_exact"][2][0] = BigInt(old + 4).str();
  EXPECT_FALSE(verify_certificate(certificate_from_json(j)));
}

TEST(Certificate, TamperedWordFails) {
  auto c = delta_12_4();
  c.word.push_back(Letter::T);
  EXPECT_FALSE(verify_certificate(c));
}

TEST(Certificate, TamperedConditionFails) {
  auto j = to_json(delta_12_4());
  j["conditions"][0]["pass"] = false;
  EXPECT_FALSE(verify_certificate(certificate_from_json(j)));
}

TEST(Certificate, EmptyWordClaimFails) {
  // I has c = 0, so the divisibility condition holds, but delta(I) = 0.
  const auto gens = generators(12);
  const Word empty;
  const auto exact = ExactMat::identity(gens.ring);
  const auto conds = detail::delta_conditions(12, 4, exact, empty);
  bool c_ok = false, all_ok = true;
  for (const auto& k : conds) {
    if (k.desc.find("lower-left") != std::string::npos) c_ok = k.pass;
    all_ok = all_ok && k.pass;
  }
  EXPECT_TRUE(c_ok);
  EXPECT_FALSE(all_ok);
  WitnessCertificate cert{12, 4, "delta", empty, exact, reduce_mat(exact, QuotientRing::over(gens.ring, 4)), conds, ""};
  EXPECT_FALSE(verify_certificate(cert));
}
