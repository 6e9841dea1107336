#pragma once

// Quadratic fields Q(sqrt(d)): discriminants, splitting of rational primes,
// streams of non-split primes, and rational norm-class membership.

#include <cstdlib>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "shimura/arith.hpp"
#include "shimura/errors.hpp"

namespace shimura {

// Mixed-type == and != between Rational and integers must be avoided: under
// C++20 rewritten candidates this Boost version's reversed operator== recurses
// into itself. Compare numerator()/denominator() or a Rational value instead.
// (Relational <, >, <=, >= and all arithmetic are unaffected.)
using Rational = boost::rational<Int>;

enum class SplitType { Split, Inert, Ramified };

inline const char* to_string(SplitType s) {
  switch (s) {
    case SplitType::Split: return "split";
    case SplitType::Inert: return "inert";
    default: return "ramified";
  }
}

class QuadField {
 public:
  Int radicand() const { return d_; }

  // Fundamental discriminant: d when d = 1 mod 4, else 4d.
  Int disc() const { return ((d_ % 4) + 4) % 4 == 1 ? d_ : 4 * d_; }

  bool totally_real() const { return d_ > 0; }
  bool imaginary() const { return d_ < 0; }

  std::string name() const { return "Q(sqrt(" + std::to_string(d_) + "))"; }

  friend bool operator==(const QuadField&, const QuadField&) = default;

  friend QuadField make_field(Int d);

 private:
  explicit QuadField(Int d) : d_(d) {}
  Int d_;
};

inline QuadField make_field(Int d) {
  if (d == 0 || d == 1)
    throw invalid_input(errc::degenerate_radicand,
                        "radicand " + std::to_string(d) + " does not define a quadratic field");
  if (!factor(d).squarefree())
    throw invalid_input(errc::not_squarefree,
                        "radicand " + std::to_string(d) + " is not squarefree");
  return QuadField(d);
}

inline SplitType splitting(const QuadField& K, Int p) {
  if (!is_prime(p))
    throw invalid_input(errc::not_prime, std::to_string(p) + " is not prime");
  switch (kronecker(K.disc(), p)) {
    case 1: return SplitType::Split;
    case -1: return SplitType::Inert;
    default: return SplitType::Ramified;
  }
}

inline bool is_nonsplit(const QuadField& K, Int p) {
  return splitting(K, p) != SplitType::Split;
}

// Ascending stream of the rational primes that do not split in K (inert or
// ramified). Cebotarev guarantees it never dries up; callers bound it.
class NonsplitPrimes {
 public:
  explicit NonsplitPrimes(const QuadField& K) : K_(K) {}

  Int next() {
    for (;;) {
      cur_ = cur_ < 2 ? 2 : cur_ + 1;
      if (is_prime(cur_) && is_nonsplit(K_, cur_)) return cur_;
    }
  }

 private:
  QuadField K_;
  Int cur_ = 1;
};

inline std::vector<Int> first_nonsplit_primes(const QuadField& K, int count) {
  NonsplitPrimes stream(K);
  std::vector<Int> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

// True iff x is a norm from K, i.e. (x, d)_v = +1 at the real place and at
// every prime dividing 2 * num(x) * den(x) * disc(K). The symbol is trivial
// everywhere else, so this finite check decides the global question.
inline bool is_norm(const QuadField& K, const Rational& x) {
  if (x.numerator() == 0)
    throw invalid_input(errc::zero_argument, "norm test needs x != 0");
  Int xi = x.numerator() * x.denominator();  // x times the square den^2
  if (hilbert_local(xi, K.radicand(), PlaceQ::infinite()) != 1) return false;
  std::vector<Int> primes = {2};
  for (auto [p, e] : factor(xi).exponents)
    if (p != 2) primes.push_back(p);
  for (auto [p, e] : factor(K.disc()).exponents)
    if (p != 2) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (Int p : primes)
    if (hilbert_local(xi, K.radicand(), PlaceQ::finite(p)) != 1) return false;
  return true;
}

}  // namespace shimura
