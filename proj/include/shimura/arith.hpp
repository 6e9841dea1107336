#pragma once

// Exact integer arithmetic: factorization, quadratic residue symbols, and
// local Hilbert symbols with an independent brute-force solvability oracle.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shimura/errors.hpp"

namespace shimura {

using Int = std::int64_t;

namespace detail {

inline Int mul_mod(Int a, Int b, Int m) {
  return static_cast<Int>(static_cast<__int128>(a) * b % m);
}

inline Int pow_mod(Int base, Int exp, Int m) {
  Int r = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; the fixed base set is exact for every 64-bit
// input, far beyond the factorization bound used here.
inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (Int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// A place of Q: the real place or a finite place attached to a prime.
// Ordered with the real place first, then primes ascending, so that
// ramification sets have one canonical storage order.
class PlaceQ {
 public:
  static PlaceQ infinite() { return PlaceQ(0); }

  static PlaceQ finite(Int p) {
    if (!is_prime(p))
      throw invalid_input(errc::not_prime,
                          "finite place requires a prime, got " + std::to_string(p));
    return PlaceQ(p);
  }

  bool is_infinite() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }

  Int prime() const {
    if (p_ == 0)
      throw invalid_input(errc::not_prime, "the real place carries no prime");
    return p_;
  }

  friend auto operator<=>(const PlaceQ&, const PlaceQ&) = default;

  std::string str() const { return p_ == 0 ? "inf" : std::to_string(p_); }

 private:
  explicit PlaceQ(Int p) : p_(p) {}
  Int p_;  // 0 encodes the real place
};

struct Factorization {
  int sign = 1;                                 // +1 or -1
  std::vector<std::pair<Int, int>> exponents;   // distinct primes, increasing

  Int value() const {
    Int v = sign;
    for (auto [p, e] : exponents)
      for (int i = 0; i < e; ++i) v *= p;
    return v;
  }

  int valuation(Int p) const {
    for (auto [q, e] : exponents)
      if (q == p) return e;
    return 0;
  }

  bool squarefree() const {
    return std::all_of(exponents.begin(), exponents.end(),
                       [](const auto& pe) { return pe.second == 1; });
  }
};

inline constexpr Int kFactorBound = 1'000'000'000'000;  // 10^12

inline Factorization factor(Int n, Int bound = kFactorBound) {
  if (n == 0) throw invalid_input(errc::zero_input, "cannot factor 0");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Int m = n < 0 ? -n : n;
  if (m > bound)
    throw invalid_input(errc::bound_exceeded,
                        "|" + std::to_string(n) + "| exceeds factorization bound " +
                            std::to_string(bound));
  auto strip = [&](Int p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) f.exponents.emplace_back(p, e);
    return e > 0;
  };
  strip(2);
  strip(3);
  if (m > 1 && !is_prime(m)) {
    for (Int d = 5; d * d <= m; d += 6) {
      bool found = strip(d);
      found |= strip(d + 2);
      if (found && (m == 1 || is_prime(m))) break;
    }
  }
  if (m > 1) f.exponents.emplace_back(m, 1);
  return f;
}

// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre(Int a, Int p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw invalid_input(errc::not_odd_prime,
                        std::to_string(p) + " is not an odd prime");
  Int r = detail::pow_mod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// Kronecker symbol (a/n), the full multiplicative extension of the Legendre
// symbol to all nonzero moduli.
inline int kronecker(Int a, Int n) {
  if (n == 0) throw invalid_input(errc::zero_modulus, "Kronecker symbol needs n != 0");
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) {
    Int am8 = ((a % 8) + 8) % 8;  // a odd here
    if (am8 == 3 || am8 == 5) k = -k;
  }
  // Jacobi loop: n odd positive.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Int nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) k = -k;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    a %= n;
  }
  return n == 1 ? k : 0;
}

namespace detail {

// Splits n = p^e * u and returns {e, u}.
inline std::pair<int, Int> split_valuation(Int n, Int p) {
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return {e, n};
}

// (u-1)/2 mod 2 and (u^2-1)/8 mod 2 for odd u; both depend only on u mod 8.
inline int eps2(Int u) {
  Int r = ((u % 4) + 4) % 4;
  return r == 1 ? 0 : 1;
}
inline int omega2(Int u) {
  Int r = ((u % 8) + 8) % 8;
  return (r == 1 || r == 7) ? 0 : 1;
}

}  // namespace detail

// Local Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
// solution over the completion of Q at v.
inline int hilbert_local(Int a, Int b, const PlaceQ& v) {
  if (a == 0 || b == 0)
    throw invalid_input(errc::zero_argument, "Hilbert symbol needs nonzero arguments");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  Int p = v.prime();
  auto [alpha, u] = detail::split_valuation(a, p);
  auto [beta, w] = detail::split_valuation(b, p);
  if (p == 2) {
    int exp = detail::eps2(u) * detail::eps2(w) + (alpha % 2) * detail::omega2(w) +
              (beta % 2) * detail::omega2(u);
    return exp % 2 == 0 ? 1 : -1;
  }
  int sign = 1;
  if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 == 1) sign = -sign;
  if (beta % 2) sign *= legendre(u, p);
  if (alpha % 2) sign *= legendre(w, p);
  return sign;
}

inline constexpr Int kOraclePrimeBound = 100;
inline constexpr Int kOracleCoeffBound = 1000;
inline constexpr Int kOracleModulusCap = Int(1) << 26;

// Independent check of hilbert_local: decides whether a x^2 + b y^2 = z^2 has
// a solution mod p^k with at least one coordinate a p-adic unit. Two
// reductions keep the search linear in the modulus, both exact at the level
// of solution sets:
//   * a solution with x and y both non-units has v_p(z^2) >= 2, so z is not
//     a unit either; hence any nontrivial solution has x or y a unit;
//   * scaling a solution by the inverse of that unit coordinate is a
//     bijection on solutions, so the unit coordinate may be fixed to 1.
// What remains is an exhaustive scan of a + b y^2 (and a x^2 + b) against the
// full table of squares mod p^k. The precision k = 1 + 2(v_p(2) + max(v_p(a),
// v_p(b))) makes the search equivalent to solvability over Q_p: a p-adic
// solution reduces mod p^k with its unit coordinate intact, and conversely a
// solution mod p^k found with x = 1 (resp. y = 1) has the constant partial
// derivative 2a (resp. 2b), whose valuation v_p(2) + v_p(coefficient) is less
// than k/2, so it lifts to Z_p by Hensel's lemma.
inline int hilbert_oracle(Int a, Int b, const PlaceQ& v) {
  if (a == 0 || b == 0)
    throw invalid_input(errc::zero_argument, "Hilbert symbol needs nonzero arguments");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  Int p = v.prime();
  if (p > kOraclePrimeBound || std::abs(a) > kOracleCoeffBound ||
      std::abs(b) > kOracleCoeffBound)
    throw invalid_input(errc::oracle_bound_exceeded,
                        "oracle domain is p <= " + std::to_string(kOraclePrimeBound) +
                            ", |a|,|b| <= " + std::to_string(kOracleCoeffBound));
  int va = detail::split_valuation(a, p).first;
  int vb = detail::split_valuation(b, p).first;
  int k = (p == 2 ? 3 : 1) + 2 * std::max(va, vb);
  Int m = 1;
  for (int i = 0; i < k; ++i) {
    m *= p;
    if (m > kOracleModulusCap)
      throw invalid_input(errc::oracle_bound_exceeded,
                          "oracle modulus " + std::to_string(p) + "^" +
                              std::to_string(k) + " exceeds cap " +
                              std::to_string(kOracleModulusCap));
  }

  std::vector<std::uint64_t> squares((m + 63) / 64, 0);
  for (Int z = 0; z < m; ++z) {
    Int s = detail::mul_mod(z, z, m);
    squares[s >> 6] |= std::uint64_t(1) << (s & 63);
  }
  auto is_square = [&](Int t) {
    return (squares[t >> 6] >> (t & 63)) & 1;
  };
  Int am = ((a % m) + m) % m;
  Int bm = ((b % m) + m) % m;
  for (Int y = 0; y < m; ++y) {  // x = 1
    Int t = (am + detail::mul_mod(bm, detail::mul_mod(y, y, m), m)) % m;
    if (is_square(t)) return 1;
  }
  for (Int x = 0; x < m; ++x) {  // y = 1
    Int t = (detail::mul_mod(am, detail::mul_mod(x, x, m), m) + bm) % m;
    if (is_square(t)) return 1;
  }
  return -1;
}

// Places where (a,b)_v can be nontrivial: the real place, 2, and every odd
// prime dividing a or b.
inline std::vector<PlaceQ> relevant_places(Int a, Int b) {
  std::vector<PlaceQ> places;
  places.push_back(PlaceQ::infinite());
  places.push_back(PlaceQ::finite(2));
  std::vector<Int> primes;
  for (auto [p, e] : factor(a).exponents)
    if (p != 2) primes.push_back(p);
  for (auto [p, e] : factor(b).exponents)
    if (p != 2) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (Int p : primes) places.push_back(PlaceQ::finite(p));
  return places;
}

}  // namespace shimura
