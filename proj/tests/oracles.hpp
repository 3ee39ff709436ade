#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the library's arithmetic: rings are small int64 tables, polynomials are
// expanded directly, and closures use ordered sets of plain vectors.

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Vec = std::vector<std::int64_t>;

inline int phi(int n) {
  int c = 0;
  for (int k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

/// Psi_n as the rounded product of (x - 2 cos(2 pi k / n)) over units k < n/2.
inline Vec psi_numeric(int n) {
  std::vector<double> c{1.0};
  for (int k = 1; 2 * k < n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    const double root = 2.0 * std::cos(2.0 * M_PI * k / n);
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= root * c[i];
    }
    c = next;
  }
  Vec out;
  for (double v : c) out.push_back(std::llround(v));
  return out;
}

/// Phi_n as the rounded product of (x - zeta^k) over units k.
inline Vec phi_numeric(int n) {
  std::vector<std::complex<double>> c{1.0};
  for (int k = 1; k <= n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    const auto root = std::polar(1.0, 2.0 * M_PI * k / n);
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= root * c[i];
    }
    c = next;
  }
  Vec out;
  for (const auto& v : c) out.push_back(std::llround(v.real()));
  return out;
}

/// x^d * psi(x + 1/x) expanded binomially: sum_k c_k sum_j C(k,j) x^{d + k - 2j}.
inline std::vector<Big> palindromic_lift(const std::vector<Big>& psi) {
  const int d = static_cast<int>(psi.size()) - 1;
  std::vector<Big> out(static_cast<std::size_t>(2 * d + 1));
  for (int k = 0; k <= d; ++k) {
    Big binom = 1;
    for (int j = 0; j <= k; ++j) {
      out[static_cast<std::size_t>(d + k - 2 * j)] += psi[static_cast<std::size_t>(k)] * binom;
      binom = binom * (k - j) / (j + 1);
    }
  }
  return out;
}

inline std::int64_t mod(std::int64_t a, std::int64_t N) { return ((a % N) + N) % N; }

/// Z/N[x]/(f) for monic f given lowest degree first, with naive arithmetic.
struct SmallRing {
  std::int64_t N;
  Vec f;
  int d;

  SmallRing(std::int64_t N_, Vec f_) : N(N_), f(std::move(f_)), d(static_cast<int>(f.size()) - 1) {}

  Vec reduce(Vec a) const {
    for (std::size_t i = a.size(); i-- > static_cast<std::size_t>(d);) {
      const std::int64_t q = mod(a[i], N);
      for (int j = 0; j <= d; ++j) a[i - d + j] = mod(a[i - d + j] - q * f[j], N);
    }
    a.resize(d);
    for (auto& v : a) v = mod(v, N);
    return a;
  }
  Vec mul(const Vec& a, const Vec& b) const {
    Vec p(2 * d, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) p[i + j] = mod(p[i + j] + a[i] * b[j], N);
    return reduce(p);
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r[i] = mod(a[i] + b[i], N);
    return r;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r[i] = mod(a[i] - b[i], N);
    return r;
  }
  Vec constant(std::int64_t c) const {
    Vec r(d, 0);
    r[0] = mod(c, N);
    return r;
  }
  std::int64_t size() const {
    std::int64_t s = 1;
    for (int i = 0; i < d; ++i) s *= N;
    return s;
  }
  Vec element(std::int64_t idx) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) {
      r[i] = idx % N;
      idx /= N;
    }
    return r;
  }
  std::int64_t index(const Vec& a) const {
    std::int64_t idx = 0;
    for (int i = d; i-- > 0;) idx = idx * N + a[i];
    return idx;
  }
};

/// #{(a,b,c,d) : ad - bc = 1} via a histogram of the products bc.
inline std::int64_t brute_sl2(const SmallRing& R) {
  const std::int64_t q = R.size();
  std::vector<Vec> elems;
  for (std::int64_t i = 0; i < q; ++i) elems.push_back(R.element(i));
  std::vector<std::int64_t> hist(static_cast<std::size_t>(q), 0);
  for (std::int64_t b = 0; b < q; ++b)
    for (std::int64_t c = 0; c < q; ++c) ++hist[static_cast<std::size_t>(R.index(R.mul(elems[b], elems[c])))];
  const Vec one = R.constant(1);
  std::int64_t total = 0;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t dd = 0; dd < q; ++dd)
      total += hist[static_cast<std::size_t>(R.index(R.sub(R.mul(elems[a], elems[dd]), one)))];
  return total;
}

/// 2x2 matrix as the concatenation of its four entries.
using Mat = std::vector<Vec>;

inline Mat mat_mul(const SmallRing& R, const Mat& x, const Mat& y) {
  return {R.add(R.mul(x[0], y[0]), R.mul(x[1], y[2])), R.add(R.mul(x[0], y[1]), R.mul(x[1], y[3])),
          R.add(R.mul(x[2], y[0]), R.mul(x[3], y[2])), R.add(R.mul(x[2], y[1]), R.mul(x[3], y[3]))};
}

/// T, T^-1, U, U^-1 over O/N written out by hand.
inline std::vector<Mat> triangle_generators(const SmallRing& R) {
  const Vec tr = R.add(R.constant(2), R.reduce({0, 1}));
  const Vec one = R.constant(1), zero = R.constant(0), minus = R.constant(-1);
  const Vec mtr = R.sub(zero, tr);
  return {{one, tr, zero, one}, {one, mtr, zero, one}, {minus, zero, one, minus}, {minus, zero, minus, minus}};
}

/// Order of <T, U> mod N by breadth-first search over an ordered set.
inline std::size_t naive_closure_order(const SmallRing& R) {
  const auto gens = triangle_generators(R);
  const Mat I{R.constant(1), R.constant(0), R.constant(0), R.constant(1)};
  std::set<Mat> seen{I};
  std::deque<Mat> todo{I};
  while (!todo.empty()) {
    const Mat m = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      Mat p = mat_mul(R, m, g);
      if (seen.insert(p).second) todo.push_back(std::move(p));
    }
  }
  return seen.size();
}

/// Roots of f in F_p by exhaustive evaluation.
inline std::vector<std::int64_t> roots_mod_p(const Vec& f, std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = mod(acc * x + f[i], p);
    if (acc == 0) out.push_back(x);
  }
  return out;
}

/// Remainder of a by monic b over F_p, coefficients lowest first.
inline Vec poly_rem(Vec a, const Vec& b, std::int64_t p) {
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t q = mod(a[i], p);
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = mod(a[i - db + j] - q * b[j], p);
  }
  a.resize(db);
  for (auto& v : a) v = mod(v, p);
  return a;
}

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree 1 .. deg/2.
inline bool irreducible_brute(const Vec& f, std::int64_t p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int k = 1; 2 * k <= deg; ++k) {
    std::int64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Vec g(static_cast<std::size_t>(k + 1));
      std::int64_t t = idx;
      for (int i = 0; i < k; ++i) {
        g[static_cast<std::size_t>(i)] = t % p;
        t /= p;
      }
      g[static_cast<std::size_t>(k)] = 1;
      const Vec r = poly_rem(f, g, p);
      bool zero = true;
      for (auto v : r) zero = zero && v == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace oracle
