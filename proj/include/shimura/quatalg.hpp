#pragma once

// Quaternion algebras over Q as ramification sets and Hilbert symbols,
// together with explicit element arithmetic and the 2x2 matrix embedding
// over an embedded quadratic field.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "shimura/arith.hpp"
#include "shimura/errors.hpp"
#include "shimura/qfield.hpp"

namespace shimura {

// A quaternion algebra over Q, identified with its ramification set: the
// finite, even-cardinality set of places where it is locally division.
class QuatAlg {
 public:
  QuatAlg() = default;

  explicit QuatAlg(std::vector<PlaceQ> ram) : ram_(std::move(ram)) {
    std::sort(ram_.begin(), ram_.end());
    ram_.erase(std::unique(ram_.begin(), ram_.end()), ram_.end());
    if (ram_.size() % 2 != 0)
      throw invalid_input(errc::odd_ramification,
                          "a quaternion algebra over Q ramifies at an even number of places");
  }

  const std::vector<PlaceQ>& ram() const { return ram_; }

  bool ramified_at(const PlaceQ& v) const {
    return std::binary_search(ram_.begin(), ram_.end(), v);
  }

  bool indefinite() const { return !ramified_at(PlaceQ::infinite()); }

  friend bool operator==(const QuatAlg&, const QuatAlg&) = default;

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < ram_.size(); ++i) {
      if (i) s += ",";
      s += ram_[i].str();
    }
    return s + "}";
  }

 private:
  std::vector<PlaceQ> ram_;
};

struct HilbertSymbolRep {
  Int a = 1;
  Int b = 1;
  friend bool operator==(const HilbertSymbolRep&, const HilbertSymbolRep&) = default;
};

// Ramification set of the algebra (a,b): the places v with (a,b)_v = -1.
// Only the real place, 2, and odd primes dividing ab can appear.
inline QuatAlg ram_from_symbol(Int a, Int b) {
  if (a == 0 || b == 0)
    throw invalid_input(errc::zero_argument, "Hilbert symbol needs nonzero entries");
  std::vector<PlaceQ> ram;
  for (const PlaceQ& v : relevant_places(a, b))
    if (hilbert_local(a, b, v) == -1) ram.push_back(v);
  if (ram.size() % 2 != 0)
    throw internal_error(errc::internal_inconsistency,
                         "product formula violated for (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
  return QuatAlg(std::move(ram));
}

inline constexpr Int kSymbolSearchBound = 4000;  // on |a| + |b|

// A Hilbert symbol representing the given ramification set. Candidates are
// scanned by |a|+|b|, then |a| (positive sign first), then sign of b; the
// first match wins, so the output is reproducible. The classification of
// quaternion algebras over Q guarantees a representative exists for every
// even set.
inline HilbertSymbolRep symbol_from_ram(const QuatAlg& S,
                                        Int bound = kSymbolSearchBound) {
  bool want_inf = S.ramified_at(PlaceQ::infinite());
  auto matches = [&](Int a, Int b) {
    // Cheap local screens before the full ramification set is computed.
    if ((a < 0 && b < 0) != want_inf) return false;
    for (const PlaceQ& v : S.ram())
      if (v.is_finite() && hilbert_local(a, b, v) != -1) return false;
    return ram_from_symbol(a, b) == S;
  };
  for (Int t = 2; t <= bound; ++t) {
    for (Int aa = 1; aa <= t - 1; ++aa) {
      for (Int a : {aa, -aa}) {
        Int bb = t - aa;
        for (Int b : {bb, -bb}) {
          if (matches(a, b)) return {a, b};
        }
      }
    }
  }
  throw invalid_input(errc::search_bound_exceeded,
                      "no Hilbert symbol with |a|+|b| <= " + std::to_string(bound) +
                          " represents " + S.str());
}

// Over Q the isomorphism class is exactly the ramification set.
inline bool is_isomorphic(const QuatAlg& B1, const QuatAlg& B2) { return B1 == B2; }

inline bool is_division(const QuatAlg& B) { return !B.ram().empty(); }

// K embeds in B iff K splits B locally everywhere B is ramified: every
// finite ramified prime must be non-split in K, and real ramification
// requires K imaginary.
inline bool embeds(const QuadField& K, const QuatAlg& B) {
  for (const PlaceQ& v : B.ram()) {
    if (v.is_infinite()) {
      if (!K.imaginary()) return false;
    } else if (splitting(K, v.prime()) == SplitType::Split) {
      return false;
    }
  }
  return true;
}

// A place of a quadratic field K lying over a rational prime p. Split
// primes carry two places distinguished by tag 0/1; non-split primes carry
// one (tag 0).
struct KPlace {
  Int p = 2;
  int tag = 0;
  SplitType split = SplitType::Inert;

  friend auto operator<=>(const KPlace&, const KPlace&) = default;

  std::string str() const {
    return split == SplitType::Split ? std::to_string(p) + ":" + std::to_string(tag)
                                     : std::to_string(p);
  }
};

inline KPlace make_kplace(Int p, int tag, SplitType split) {
  if (!is_prime(p))
    throw invalid_input(errc::not_prime, std::to_string(p) + " is not prime");
  if (tag != 0 && tag != 1)
    throw invalid_input(errc::place_inconsistent_with_splitting, "place tag must be 0 or 1");
  if (tag == 1 && split != SplitType::Split)
    throw invalid_input(errc::place_inconsistent_with_splitting,
                        "tag 1 only exists over a split prime");
  return KPlace{p, tag, split};
}

// Ramification of K tensor B as a set of places of K. A finite ramified
// prime of B survives iff it splits in K (both places over it ramify);
// non-split primes have local degree two and die. Real ramification
// survives over a totally real K (both real places) and dies over an
// imaginary K.
struct TensorRam {
  bool real_pair = false;  // both real places of K ramified
  std::vector<KPlace> finite;

  friend bool operator==(const TensorRam&, const TensorRam&) = default;
};

inline TensorRam tensor_ram(const QuatAlg& B, const QuadField& K) {
  TensorRam out;
  for (const PlaceQ& v : B.ram()) {
    if (v.is_infinite()) {
      if (K.totally_real()) out.real_pair = true;
      continue;
    }
    Int p = v.prime();
    if (splitting(K, p) == SplitType::Split) {
      out.finite.push_back(KPlace{p, 0, SplitType::Split});
      out.finite.push_back(KPlace{p, 1, SplitType::Split});
    }
  }
  std::sort(out.finite.begin(), out.finite.end());
  return out;
}

// ---------------------------------------------------------------------------
// Element arithmetic in the algebra (a,b): basis {1, i, j, ij} with i^2 = a,
// j^2 = b, ij = -ji.

struct QuatElement {
  std::array<Rational, 4> c{};  // coefficients of 1, i, j, ij
  Int a = 1;
  Int b = 1;

  friend bool operator==(const QuatElement&, const QuatElement&) = default;
};

inline QuatElement quat_scalar(const Rational& x, Int a, Int b) {
  return {{x, Rational(0), Rational(0), Rational(0)}, a, b};
}

inline QuatElement quat_basis(int idx, Int a, Int b) {
  QuatElement e{{}, a, b};
  e.c[idx] = Rational(1);
  return e;
}

namespace detail {
inline void require_same_symbol(const QuatElement& x, const QuatElement& y) {
  if (x.a != y.a || x.b != y.b)
    throw invalid_input(errc::symbol_mismatch,
                        "quaternion elements live in different algebras");
}
}  // namespace detail

inline QuatElement quat_add(const QuatElement& x, const QuatElement& y) {
  detail::require_same_symbol(x, y);
  QuatElement z{{}, x.a, x.b};
  for (int i = 0; i < 4; ++i) z.c[i] = x.c[i] + y.c[i];
  return z;
}

inline QuatElement quat_mul(const QuatElement& x, const QuatElement& y) {
  detail::require_same_symbol(x, y);
  const Rational a(x.a), b(x.b);
  const auto& u = x.c;
  const auto& v = y.c;
  QuatElement z{{}, x.a, x.b};
  z.c[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
  z.c[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
  z.c[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
  z.c[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
  return z;
}

inline QuatElement quat_conj(const QuatElement& x) {
  return {{x.c[0], -x.c[1], -x.c[2], -x.c[3]}, x.a, x.b};
}

inline Rational reduced_trace(const QuatElement& x) { return 2 * x.c[0]; }

inline Rational reduced_norm(const QuatElement& x) {
  const Rational a(x.a), b(x.b);
  return x.c[0] * x.c[0] - a * x.c[1] * x.c[1] - b * x.c[2] * x.c[2] +
         a * b * x.c[3] * x.c[3];
}

// ---------------------------------------------------------------------------
// Elements and 2x2 matrices over K = Q(sqrt(disc)), written u + v*w with
// w^2 = disc.

struct KElem {
  Rational u;
  Rational v;
  Int disc = 1;

  friend bool operator==(const KElem&, const KElem&) = default;
};

inline KElem k_conj(const KElem& x) { return {x.u, -x.v, x.disc}; }

namespace detail {
inline void require_same_field(const KElem& x, const KElem& y) {
  if (x.disc != y.disc)
    throw invalid_input(errc::field_mismatch, "field elements over different discriminants");
}
}  // namespace detail

inline KElem k_add(const KElem& x, const KElem& y) {
  detail::require_same_field(x, y);
  return {x.u + y.u, x.v + y.v, x.disc};
}

inline KElem k_sub(const KElem& x, const KElem& y) {
  detail::require_same_field(x, y);
  return {x.u - y.u, x.v - y.v, x.disc};
}

inline KElem k_mul(const KElem& x, const KElem& y) {
  detail::require_same_field(x, y);
  return {x.u * y.u + Rational(x.disc) * x.v * y.v, x.u * y.v + x.v * y.u, x.disc};
}

inline KElem k_scale(const Rational& s, const KElem& x) { return {s * x.u, s * x.v, x.disc}; }

// Field norm x * conj(x), a rational.
inline Rational k_norm(const KElem& x) {
  return x.u * x.u - Rational(x.disc) * x.v * x.v;
}

inline KElem k_div(const KElem& x, const KElem& y) {
  detail::require_same_field(x, y);
  Rational n = k_norm(y);
  if (n.numerator() == 0)
    throw invalid_input(errc::zero_argument, "division by zero field element");
  return k_scale(Rational(1) / n, k_mul(x, k_conj(y)));
}

struct KMatrix2 {
  std::array<std::array<KElem, 2>, 2> e;

  friend bool operator==(const KMatrix2&, const KMatrix2&) = default;

  KElem trace() const { return k_add(e[0][0], e[1][1]); }

  KMatrix2 conj_transpose() const {
    return {{{{k_conj(e[0][0]), k_conj(e[1][0])}, {k_conj(e[0][1]), k_conj(e[1][1])}}}};
  }
};

inline KMatrix2 kmat_mul(const KMatrix2& x, const KMatrix2& y) {
  KMatrix2 z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      z.e[r][c] = k_add(k_mul(x.e[r][0], y.e[0][c]), k_mul(x.e[r][1], y.e[1][c]));
  return z;
}

// Matrix of right multiplication w -> w * conj(z) on B = (n, D), viewed as a
// left K-vector space with basis {1, i}, K = Q(j), j^2 = D. Writing
// z = alpha + beta*i with alpha, beta in K, the matrix is
//   [ conj(alpha)   -n*conj(beta) ]
//   [   -beta           alpha     ]
// acting on column coordinate vectors; z -> M(z) is a ring homomorphism.
inline KMatrix2 matrix_embedding(const QuatElement& z, const QuadField& K) {
  if (z.b != K.disc())
    throw invalid_input(errc::basis_mismatch,
                        "element algebra (" + std::to_string(z.a) + "," +
                            std::to_string(z.b) + ") does not embed " + K.name() +
                            " as Q(j): need b = " + std::to_string(K.disc()));
  const Int D = z.b;
  const Rational n(z.a);
  // z = x0 + x1 i + x2 j + x3 ij = (x0 + x2 j) + (x1 - x3 j) i
  KElem alpha{z.c[0], z.c[2], D};
  KElem beta{z.c[1], -z.c[3], D};
  KMatrix2 m;
  m.e[0][0] = k_conj(alpha);
  m.e[0][1] = k_scale(-n, k_conj(beta));
  m.e[1][0] = k_scale(Rational(-1), beta);
  m.e[1][1] = alpha;
  return m;
}

}  // namespace shimura
