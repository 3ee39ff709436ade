#pragma once

// Breadth-first closure of a finitely generated subgroup of SL_2 over a finite
// quotient ring. Elements are bit-packed into 1, 2 or 4 machine words and
// indexed in discovery order; each element keeps a parent pointer so a word
// can be recovered without storing words.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "trigroup/errors.hpp"
#include "trigroup/mat2.hpp"
#include "trigroup/ring.hpp"

namespace trigroup {

inline constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 26;

/// Packing of the 4 * degree coefficients of a matrix, row-major a, b, c, d,
/// each entry in ascending degree.
struct KeyLayout {
  std::uint32_t modulus = 0;
  int degree = 0;
  int bits = 0;
  int words = 0;

  /// Layout for the byte encoding only; words stays 0 when packing is impossible.
  static KeyLayout for_bytes(const QuotientRing& ring) {
    KeyLayout l;
    l.modulus = ring.modulus();
    l.degree = ring.degree();
    while ((std::uint64_t{1} << l.bits) < l.modulus) ++l.bits;
    const int per_word = 64 / l.bits;
    const int needed = (l.coeff_count() + per_word - 1) / per_word;
    l.words = needed <= 1 ? 1 : needed <= 2 ? 2 : needed <= 4 ? 4 : 0;
    return l;
  }

  /// Layout for packed keys of at most 256 bits.
  static KeyLayout for_ring(const QuotientRing& ring) {
    const auto l = for_bytes(ring);
    if (l.words == 0) throw std::invalid_argument("closure: matrices over " + ring.describe() + " need more than 256 bits");
    return l;
  }

  int coeff_count() const { return 4 * degree; }

  /// Coefficients never straddle a word boundary.
  void pack(const std::uint32_t* coeffs, std::uint64_t* out) const {
    std::fill(out, out + words, 0);
    const int per_word = 64 / bits;
    for (int i = 0; i < coeff_count(); ++i)
      out[i / per_word] |= std::uint64_t{coeffs[i]} << ((i % per_word) * bits);
  }

  void unpack(const std::uint64_t* in, std::uint32_t* coeffs) const {
    const int per_word = 64 / bits;
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    for (int i = 0; i < coeff_count(); ++i)
      coeffs[i] = static_cast<std::uint32_t>((in[i / per_word] >> ((i % per_word) * bits)) & mask);
  }

  /// Byte width of one coefficient in the canonical encoding.
  int byte_width() const {
    int w = 1;
    while (w < 4 && (std::uint64_t{1} << (8 * w)) < modulus) ++w;
    return w;
  }
};

inline std::vector<std::uint32_t> flatten(const ModMat& m) {
  std::vector<std::uint32_t> out;
  for (const auto* e : {&m.a, &m.b, &m.c, &m.d}) out.insert(out.end(), e->coeffs().begin(), e->coeffs().end());
  return out;
}

inline ModMat unflatten(const QuotientPtr& ring, const std::uint32_t* c) {
  const auto d = static_cast<std::size_t>(ring->degree());
  auto entry = [&](std::size_t k) { return QuotientElement(ring, std::vector<std::uint32_t>(c + k * d, c + (k + 1) * d)); };
  return {entry(0), entry(1), entry(2), entry(3)};
}

/// Canonical key: every coefficient little-endian in byte_width() bytes,
/// row-major entries, ascending degree. Length 4 * d * width.
inline std::vector<std::uint8_t> canonical_key(const KeyLayout& layout, const std::uint32_t* coeffs) {
  const int w = layout.byte_width();
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(layout.coeff_count() * w));
  for (int i = 0; i < layout.coeff_count(); ++i)
    for (int b = 0; b < w; ++b) out.push_back(static_cast<std::uint8_t>(coeffs[i] >> (8 * b)));
  return out;
}

inline std::vector<std::uint8_t> canonical_key(const ModMat& m) {
  const auto c = flatten(m);
  return canonical_key(KeyLayout::for_bytes(*m.a.ring()), c.data());
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

struct KeyView {
  const std::uint64_t* words;
};

/// Packed keys of all elements, stride `words`; the hash set stores indices.
struct KeyStore {
  int words = 1;
  std::vector<std::uint64_t> keys;

  const std::uint64_t* at(std::uint32_t i) const { return keys.data() + static_cast<std::size_t>(i) * words; }
  std::size_t hash(const std::uint64_t* k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < words; ++i) h = mix64(h ^ k[i]);
    return static_cast<std::size_t>(h);
  }
  bool equal(const std::uint64_t* x, const std::uint64_t* y) const {
    for (int i = 0; i < words; ++i)
      if (x[i] != y[i]) return false;
    return true;
  }
};

struct IndexHash {
  using is_transparent = void;
  const KeyStore* store;
  std::size_t operator()(std::uint32_t i) const { return store->hash(store->at(i)); }
  std::size_t operator()(KeyView k) const { return store->hash(k.words); }
};

struct IndexEq {
  using is_transparent = void;
  const KeyStore* store;
  bool operator()(std::uint32_t x, std::uint32_t y) const { return x == y || store->equal(store->at(x), store->at(y)); }
  bool operator()(std::uint32_t x, KeyView y) const { return store->equal(store->at(x), y.words); }
  bool operator()(KeyView x, std::uint32_t y) const { return store->equal(x.words, store->at(y)); }
};

/// Right multiplication by a fixed ring element as a linear map on
/// coefficient vectors, with shortcuts for 0 and +-1.
struct FixedFactor {
  enum Kind { Zero, One, MinusOne, General } kind = General;
  std::vector<std::uint32_t> matrix;

  static FixedFactor of(const QuotientElement& y) {
    FixedFactor f;
    const auto& ring = *y.ring();
    if (y.is_zero()) {
      f.kind = Zero;
    } else if (y == QuotientElement::one(y.ring())) {
      f.kind = One;
    } else if (y == -QuotientElement::one(y.ring())) {
      f.kind = MinusOne;
    } else {
      f.matrix = ring.mul_matrix(y.coeffs().data());
    }
    return f;
  }

  /// acc += x * y (unreduced accumulation; caller reduces).
  void accumulate(const std::uint32_t* x, std::uint64_t* acc, int d, std::uint64_t modulus, bool wide) const {
    switch (kind) {
      case Zero: return;
      case One:
        for (int i = 0; i < d; ++i) acc[i] += x[i];
        return;
      case MinusOne:
        for (int i = 0; i < d; ++i) acc[i] += (modulus - x[i]) % modulus;
        return;
      case General:
        for (int i = 0; i < d; ++i) {
          const std::uint32_t* row = matrix.data() + static_cast<std::size_t>(i) * d;
          std::uint64_t s = 0;
          if (wide) {
            for (int j = 0; j < d; ++j) s = (s + std::uint64_t{row[j]} * x[j]) % modulus;
          } else {
            for (int j = 0; j < d; ++j) s += std::uint64_t{row[j]} * x[j];
          }
          acc[i] += s % modulus;
        }
        return;
    }
  }
};

/// g -> g * h for a fixed generator h.
struct RightAction {
  FixedFactor ha, hb, hc, hd;
  int d;
  std::uint64_t modulus;
  bool wide;

  RightAction(const ModMat& h)
      : ha(FixedFactor::of(h.a)),
        hb(FixedFactor::of(h.b)),
        hc(FixedFactor::of(h.c)),
        hd(FixedFactor::of(h.d)),
        d(h.a.ring()->degree()),
        modulus(h.a.ring()->modulus()),
        wide(modulus > (std::uint64_t{1} << 16)) {}

  void apply(const std::uint32_t* g, std::uint32_t* out, std::uint64_t* scratch) const {
    const std::uint32_t* ga = g;
    const std::uint32_t* gb = g + d;
    const std::uint32_t* gc = g + 2 * d;
    const std::uint32_t* gd = g + 3 * d;
    auto entry = [&](const std::uint32_t* x, const FixedFactor& fx, const std::uint32_t* y, const FixedFactor& fy,
                     std::uint32_t* dst) {
      std::fill(scratch, scratch + d, 0);
      fx.accumulate(x, scratch, d, modulus, wide);
      fy.accumulate(y, scratch, d, modulus, wide);
      for (int i = 0; i < d; ++i) dst[i] = static_cast<std::uint32_t>(scratch[i] % modulus);
    };
    entry(ga, ha, gb, hc, out);
    entry(ga, hb, gb, hd, out + d);
    entry(gc, ha, gd, hc, out + 2 * d);
    entry(gc, hb, gd, hd, out + 3 * d);
  }
};

}  // namespace detail

/// Receives the flattened coefficients of each newly discovered element.
using ElementPredicate = std::function<bool(const std::uint32_t*)>;

class ClosureResult {
 public:
  ClosureResult(QuotientPtr ring, std::vector<ModMat> gens, std::vector<Letter> letters)
      : ring_(std::move(ring)),
        layout_(KeyLayout::for_ring(*ring_)),
        gens_(std::move(gens)),
        letters_(std::move(letters)),
        store_(std::make_unique<detail::KeyStore>()) {
    store_->words = layout_.words;
    index_ = std::make_unique<Set>(0, detail::IndexHash{store_.get()}, detail::IndexEq{store_.get()});
  }

  const QuotientPtr& ring() const { return ring_; }
  const KeyLayout& layout() const { return layout_; }
  std::uint64_t modulus() const { return layout_.modulus; }
  const std::vector<ModMat>& generators() const { return gens_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::uint64_t order() const { return parent_.size(); }
  /// False when the BFS stopped early at a predicate match.
  bool complete() const { return complete_; }
  /// Minimal BFS index of an element satisfying the search predicate.
  std::optional<std::uint32_t> found() const { return found_; }

  std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }
  std::uint8_t generator_of(std::uint32_t i) const { return gen_[i]; }

  std::vector<std::uint32_t> coeffs(std::uint32_t i) const {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(layout_.coeff_count()));
    unpack(i, c.data());
    return c;
  }

  void unpack(std::uint32_t i, std::uint32_t* out) const { layout_.unpack(store_->at(i), out); }

  ModMat element(std::uint32_t i) const {
    const auto c = coeffs(i);
    return unflatten(ring_, c.data());
  }

  std::vector<std::uint8_t> key_bytes(std::uint32_t i) const {
    const auto c = coeffs(i);
    return canonical_key(layout_, c.data());
  }

  std::optional<std::uint32_t> index_of(const std::uint32_t* coeffs) const {
    std::vector<std::uint64_t> k(static_cast<std::size_t>(layout_.words));
    layout_.pack(coeffs, k.data());
    auto it = index_->find(detail::KeyView{k.data()});
    if (it == index_->end()) return std::nullopt;
    return *it;
  }

  std::optional<std::uint32_t> index_of(const ModMat& m) const {
    if (!m.a.ring()->same_as(*ring_)) throw std::invalid_argument("ring/modulus mismatch");
    const auto c = flatten(m);
    return index_of(c.data());
  }

  bool contains(const ModMat& m) const { return index_of(m).has_value(); }

  /// Word in the generator letters whose product is element i.
  Word word(std::uint32_t i) const {
    if (i >= order()) throw KeyAbsent("closure: element index out of range");
    Word w;
    while (i != 0) {
      w.push_back(letters_[gen_[i]]);
      i = parent_[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  /// Appends an element; returns its index, or the existing index.
  std::pair<std::uint32_t, bool> insert(const std::uint32_t* coeffs, std::uint32_t parent, std::uint8_t gen) {
    const auto idx = static_cast<std::uint32_t>(parent_.size());
    const auto w = static_cast<std::size_t>(layout_.words);
    store_->keys.resize(store_->keys.size() + w);
    layout_.pack(coeffs, store_->keys.data() + static_cast<std::size_t>(idx) * w);
    auto [it, inserted] = index_->insert(idx);
    if (!inserted) {
      store_->keys.resize(store_->keys.size() - w);
      return {*it, false};
    }
    parent_.push_back(parent);
    gen_.push_back(gen);
    return {idx, true};
  }

  void reserve(std::size_t n) {
    store_->keys.reserve(n * static_cast<std::size_t>(layout_.words));
    parent_.reserve(n);
    gen_.reserve(n);
    index_->reserve(n);
  }

  void set_found(std::optional<std::uint32_t> f) { found_ = f; }
  void set_complete(bool c) { complete_ = c; }

 private:
  using Set = absl::flat_hash_set<std::uint32_t, detail::IndexHash, detail::IndexEq>;

  QuotientPtr ring_;
  KeyLayout layout_;
  std::vector<ModMat> gens_;
  std::vector<Letter> letters_;
  std::unique_ptr<detail::KeyStore> store_;
  std::unique_ptr<Set> index_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> gen_;
  std::optional<std::uint32_t> found_;
  bool complete_ = true;
};

struct ClosureOptions {
  std::uint64_t cap = kDefaultCap;
  /// Stop at the first new element satisfying this; it has the minimal index.
  ElementPredicate stop_when;
  std::size_t reserve = 0;
};

/// BFS from I multiplying on the right by each generator in list order.
inline ClosureResult close_subgroup(const std::vector<ModMat>& gens, const std::vector<Letter>& letters,
                                    const ClosureOptions& opt = {}) {
  if (gens.empty() || gens.size() != letters.size()) throw std::invalid_argument("close_subgroup: bad generator list");
  if (opt.cap < 1) throw std::invalid_argument("close_subgroup: cap must be >= 1");
  const QuotientPtr ring = gens.front().a.ring();
  const auto one = QuotientElement::one(ring);
  for (const auto& g : gens)
    if (!(g.det() == one)) throw std::invalid_argument("close_subgroup: generator determinant is not 1");

  ClosureResult res(ring, gens, letters);
  if (opt.reserve) res.reserve(opt.reserve);
  std::vector<detail::RightAction> actions(gens.begin(), gens.end());
  const auto width = static_cast<std::size_t>(res.layout().coeff_count());
  std::vector<std::uint32_t> cur(width), next(width);
  std::vector<std::uint64_t> scratch(static_cast<std::size_t>(ring->degree()));

  const auto id = flatten(ModMat::identity(ring));
  res.insert(id.data(), 0, 0);
  if (opt.stop_when && opt.stop_when(id.data())) {
    res.set_found(0);
    res.set_complete(false);
    return res;
  }
  for (std::uint32_t i = 0; i < res.order(); ++i) {
    res.unpack(i, cur.data());
    for (std::size_t g = 0; g < actions.size(); ++g) {
      actions[g].apply(cur.data(), next.data(), scratch.data());
      auto [idx, inserted] = res.insert(next.data(), i, static_cast<std::uint8_t>(g));
      if (!inserted) continue;
      if (res.order() > opt.cap) throw CapExceeded(res.order() - 1, opt.cap, ring->describe());
      if (opt.stop_when && opt.stop_when(next.data())) {
        res.set_found(idx);
        res.set_complete(false);
        return res;
      }
    }
  }
  return res;
}

/// Generators [T, T^-1, U, U^-1] reduced into `ring`.
inline std::vector<ModMat> standard_generators(const GeneratorSet& gens, const QuotientPtr& ring) {
  return {reduce_mat(gens.T, ring), reduce_mat(gens.Tinv, ring), reduce_mat(gens.U, ring), reduce_mat(gens.Uinv, ring)};
}

inline const std::vector<Letter>& standard_letters() {
  static const std::vector<Letter> l{Letter::T, Letter::Tinv, Letter::U, Letter::Uinv};
  return l;
}

/// Image of the triangle group in SL_2(ring).
inline ClosureResult close_image(const GeneratorSet& gens, const QuotientPtr& ring, const ClosureOptions& opt = {}) {
  return close_subgroup(standard_generators(gens, ring), standard_letters(), opt);
}

inline Word element_word(const ClosureResult& closure, const std::vector<std::uint8_t>& key) {
  const auto& l = closure.layout();
  const int w = l.byte_width();
  if (key.size() != static_cast<std::size_t>(l.coeff_count() * w)) throw KeyAbsent("element_word: key length mismatch");
  std::vector<std::uint32_t> c(static_cast<std::size_t>(l.coeff_count()), 0);
  for (int i = 0; i < l.coeff_count(); ++i)
    for (int b = 0; b < w; ++b) c[static_cast<std::size_t>(i)] |= std::uint32_t{key[static_cast<std::size_t>(i * w + b)]} << (8 * b);
  const auto idx = closure.index_of(c.data());
  if (!idx) throw KeyAbsent("element_word: key not in closure");
  return closure.word(*idx);
}

// ---------------------------------------------------------------------------
// Snapshots

namespace detail {

inline constexpr char kSnapshotMagic[8] = {'T', 'G', 'S', 'N', 'A', 'P', '0', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

template <class T>
void put_le(std::ostream& os, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) os.put(static_cast<char>(static_cast<std::uint64_t>(v) >> (8 * i)));
}

template <class T>
T get_le(std::istream& is) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int ch = is.get();
    if (ch == std::char_traits<char>::eof()) throw Error("snapshot: truncated file");
    v |= std::uint64_t{static_cast<std::uint8_t>(ch)} << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace detail

/// Header: magic, version, n, N, degree, variant (0 = O/N, 1 = residue ring
/// followed by its reduction polynomial), key bytes, order, generator
/// letters. Records sorted by canonical key: key, BFS index, parent
/// (all ones for the identity), generator id.
inline void save_snapshot(const ClosureResult& c, const std::string& path) {
  if (!c.complete()) throw Error("snapshot: closure is partial");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("snapshot: cannot open " + path);
  const auto& ring = *c.ring();
  const auto key_len = static_cast<std::uint32_t>(c.layout().coeff_count() * c.layout().byte_width());
  os.write(detail::kSnapshotMagic, 8);
  detail::put_le<std::uint32_t>(os, detail::kSnapshotVersion);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(ring.n()));
  detail::put_le<std::uint64_t>(os, ring.modulus());
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(ring.degree()));
  detail::put_le<std::uint32_t>(os, ring.is_full_level() ? 0u : 1u);
  if (!ring.is_full_level())
    for (auto v : ring.poly()) detail::put_le<std::uint32_t>(os, v);
  detail::put_le<std::uint32_t>(os, key_len);
  detail::put_le<std::uint64_t>(os, c.order());
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(c.letters().size()));
  for (auto l : c.letters()) os.put(letter_char(l));

  std::vector<std::uint32_t> perm(c.order());
  std::vector<std::vector<std::uint8_t>> keys(c.order());
  for (std::uint32_t i = 0; i < c.order(); ++i) {
    perm[i] = i;
    keys[i] = c.key_bytes(i);
  }
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t x, std::uint32_t y) { return keys[x] < keys[y]; });
  for (auto i : perm) {
    os.write(reinterpret_cast<const char*>(keys[i].data()), static_cast<std::streamsize>(keys[i].size()));
    detail::put_le<std::uint64_t>(os, i);
    detail::put_le<std::uint64_t>(os, i == 0 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{c.parent(i)});
    detail::put_le<std::uint8_t>(os, c.generator_of(i));
  }
  if (!os) throw Error("snapshot: write failed");
}

/// Reads a snapshot and checks every record: keys ascending, BFS indices a
/// permutation, identity at index 0, and element = parent * generator.
inline ClosureResult load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("snapshot: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::kSnapshotMagic, 8) != 0) throw Error("snapshot: bad magic");
  if (detail::get_le<std::uint32_t>(is) != detail::kSnapshotVersion) throw Error("snapshot: unsupported version");
  const int n = static_cast<int>(detail::get_le<std::uint32_t>(is));
  const auto N = detail::get_le<std::uint64_t>(is);
  const auto degree = detail::get_le<std::uint32_t>(is);
  const auto variant = detail::get_le<std::uint32_t>(is);
  const GeneratorSet gens = generators(n);
  QuotientPtr ring;
  if (variant == 0) {
    ring = QuotientRing::over(gens.ring, N);
  } else if (variant == 1) {
    std::vector<BigInt> h;
    for (std::uint32_t i = 0; i <= degree; ++i) h.emplace_back(detail::get_le<std::uint32_t>(is));
    ring = QuotientRing::residue(gens.ring, N, IntPolynomial(std::move(h)));
  } else {
    throw Error("snapshot: unknown ring variant");
  }
  if (static_cast<std::uint32_t>(ring->degree()) != degree) throw Error("snapshot: degree mismatch");
  const auto key_len = detail::get_le<std::uint32_t>(is);
  const auto order = detail::get_le<std::uint64_t>(is);
  const auto ngens = detail::get_le<std::uint32_t>(is);
  std::vector<Letter> letters;
  std::vector<ModMat> mats;
  for (std::uint32_t i = 0; i < ngens; ++i) {
    const int ch = is.get();
    if (ch == std::char_traits<char>::eof()) throw Error("snapshot: truncated file");
    letters.push_back(letter_from_char(static_cast<char>(ch)));
    mats.push_back(reduce_mat(gens.of(letters.back()), ring));
  }
  ClosureResult res(ring, mats, letters);
  const auto& layout = res.layout();
  const int w = layout.byte_width();
  if (key_len != static_cast<std::uint32_t>(layout.coeff_count() * w)) throw Error("snapshot: key length mismatch");

  struct Record {
    std::vector<std::uint32_t> coeffs;
    std::uint64_t parent;
    std::uint8_t gen;
    bool seen = false;
  };
  std::vector<Record> recs(order);
  std::vector<std::uint8_t> key(key_len), prev;
  for (std::uint64_t r = 0; r < order; ++r) {
    is.read(reinterpret_cast<char*>(key.data()), key_len);
    if (!is) throw Error("snapshot: truncated file");
    if (r > 0 && !(prev < key)) throw Error("snapshot: keys not strictly ascending");
    prev = key;
    const auto idx = detail::get_le<std::uint64_t>(is);
    if (idx >= order || recs[idx].seen) throw Error("snapshot: bad BFS index");
    auto& rec = recs[idx];
    rec.seen = true;
    rec.coeffs.assign(static_cast<std::size_t>(layout.coeff_count()), 0);
    for (int i = 0; i < layout.coeff_count(); ++i)
      for (int b = 0; b < w; ++b)
        rec.coeffs[static_cast<std::size_t>(i)] |= std::uint32_t{key[static_cast<std::size_t>(i * w + b)]} << (8 * b);
    rec.parent = detail::get_le<std::uint64_t>(is);
    rec.gen = detail::get_le<std::uint8_t>(is);
  }
  const auto id = flatten(ModMat::identity(ring));
  if (order == 0 || recs[0].coeffs != id || recs[0].parent != std::numeric_limits<std::uint64_t>::max())
    throw Error("snapshot: index 0 is not the identity");
  for (std::uint64_t i = 0; i < order; ++i) {
    const auto& rec = recs[i];
    if (i > 0) {
      if (rec.parent >= i || rec.gen >= ngens) throw Error("snapshot: bad parent record");
      const ModMat expect = unflatten(ring, recs[rec.parent].coeffs.data()) * mats[rec.gen];
      if (flatten(expect) != rec.coeffs) throw Error("snapshot: element != parent * generator at index " + std::to_string(i));
    }
    res.insert(rec.coeffs.data(), i == 0 ? 0 : static_cast<std::uint32_t>(rec.parent), i == 0 ? 0 : rec.gen);
  }
  if (res.order() != order) throw Error("snapshot: duplicate elements");
  return res;
}

}  // namespace trigroup
