#pragma once

// Dense integer polynomials and the two cyclotomic families used throughout:
// Phi_n (minimal polynomial of zeta_n) and Psi_n (minimal polynomial of
// zeta_n + zeta_n^{-1}).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace trigroup {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static IntPolynomial monomial(const BigInt& c, std::size_t degree) {
    std::vector<BigInt> v(degree + 1);
    v[degree] = c;
    return IntPolynomial(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const BigInt& leading() const { return coeffs_.back(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  BigInt operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
    std::vector<BigInt> out = a.coeffs_;
    for (auto& c : out) c *= s;
    return IntPolynomial(std::move(out));
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const char* var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      BigInt mag = abs(c);
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      if (mag != 1 || i == 0) s += mag.str();
      if (i >= 1) s += var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// Quotient and remainder of a by a monic divisor.
inline std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& a, const IntPolynomial& b) {
  if (!b.is_monic()) throw std::invalid_argument("divmod_monic: divisor must be monic");
  if (a.degree() < b.degree()) return {IntPolynomial{}, a};
  std::vector<BigInt> rem = a.coefficients();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<BigInt> quot(rem.size() - db);
  for (std::size_t i = rem.size(); i-- > db;) {
    BigInt q = rem[i];
    if (q == 0) continue;
    quot[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
  }
  rem.resize(db);
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Phi_n, obtained by dividing x^n - 1 by Phi_k for every proper divisor k.
inline IntPolynomial cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
  std::vector<int> divisors;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) divisors.push_back(k);
  std::vector<IntPolynomial> phis;
  for (int k : divisors) {
    IntPolynomial acc = IntPolynomial::monomial(1, static_cast<std::size_t>(k)) - IntPolynomial{1};
    for (std::size_t i = 0; i < phis.size(); ++i) {
      if (k % divisors[i] != 0) continue;
      auto [q, r] = divmod_monic(acc, phis[i]);
      if (!r.is_zero()) throw std::logic_error("cyclotomic_poly: inexact division");
      acc = std::move(q);
    }
    phis.push_back(std::move(acc));
  }
  return phis.back();
}

/// Psi_n with Phi_n(x) = x^d Psi_n(x + 1/x), d = phi(n)/2. Coefficients are
/// peeled off from the top degree: x^d (x + 1/x)^j = x^{d-j} (x^2 + 1)^j has
/// leading term x^{d+j}, so the coefficient of x^{d+j} in what remains of
/// Phi_n is the coefficient of Psi_n at degree j.
inline IntPolynomial real_minimal_poly(int n) {
  if (n < 3) throw std::invalid_argument("real_minimal_poly: n must be >= 3");
  const IntPolynomial phi = cyclotomic_poly(n);
  const int d = phi.degree() / 2;
  const IntPolynomial x2p1{1, 0, 1};
  std::vector<IntPolynomial> basis(static_cast<std::size_t>(d) + 1);
  basis[0] = IntPolynomial::monomial(1, static_cast<std::size_t>(d));
  IntPolynomial power{1};
  for (int j = 1; j <= d; ++j) {
    power = power * x2p1;
    basis[static_cast<std::size_t>(j)] = IntPolynomial::monomial(1, static_cast<std::size_t>(d - j)) * power;
  }
  IntPolynomial remaining = phi;
  std::vector<BigInt> psi(static_cast<std::size_t>(d) + 1);
  for (int j = d; j >= 0; --j) {
    BigInt c = remaining[static_cast<std::size_t>(d + j)];
    psi[static_cast<std::size_t>(j)] = c;
    if (c != 0) remaining = remaining - c * basis[static_cast<std::size_t>(j)];
  }
  if (!remaining.is_zero()) throw std::logic_error("real_minimal_poly: Phi_n is not palindromic");
  return IntPolynomial(std::move(psi));
}

}  // namespace trigroup
