#pragma once

// Ball quotient surfaces of simple type attached to an imaginary quadratic
// field, and the geodesic curves they contain. Curves correspond to
// quaternion algebras over Q split by the field, each carrying a normal
// form (n, disc K) with n the least positive squarefree representative.

#include <cstddef>
#include <string>
#include <vector>

#include "shimura/enumerate.hpp"
#include "shimura/errors.hpp"
#include "shimura/qfield.hpp"
#include "shimura/quatalg.hpp"

namespace shimura {

struct BallSurface {
  QuadField K;
  bool cocompact = false;  // simple type at this scale is never cocompact
};

inline BallSurface make_ball_surface(Int d) {
  QuadField K = make_field(d);  // rejects non-squarefree d
  if (!K.imaginary())
    throw invalid_input(errc::not_imaginary, K.name() + " is not imaginary");
  return BallSurface{K, false};
}

struct BallCurveClass {
  QuatAlg B;
  Int n = 1;  // normal form: B is isomorphic to (n, disc K)
  bool cuspidal = true;
  HilbertSymbolRep symbol;
};

inline constexpr Int kNormalFormBound = 1'000'000;

// Least positive squarefree n with ram(n, disc K) equal to ram(B). Such an
// n exists whenever every ramified prime of B is non-split in K; the
// result is checked before it is returned.
inline Int normal_form(const BallSurface& S, const QuatAlg& B) {
  const Int D = S.K.disc();
  for (Int n = 1; n <= kNormalFormBound; ++n) {
    if (!factor(n).squarefree()) continue;
    if (ram_from_symbol(n, D) == B) return n;
  }
  throw internal_error(errc::not_representable,
                       "no squarefree n <= " + std::to_string(kNormalFormBound) +
                           " with ram(n," + std::to_string(D) + ") = " + B.str());
}

// Curve classes in order of the product of the ramified primes. Every
// even-size set of non-split primes occurs, the empty set (the modular
// curves) first.
inline std::vector<BallCurveClass> enumerate_classes(const BallSurface& S,
                                                     std::size_t limit) {
  std::vector<BallCurveClass> out;
  if (limit == 0) return out;
  SubsetStream stream(S.K, 0);
  while (out.size() < limit) {
    PrimeSet t = stream.next();
    std::vector<PlaceQ> ram;
    for (Int p : t.primes) ram.push_back(PlaceQ::finite(p));
    QuatAlg B(std::move(ram));
    BallCurveClass c;
    c.n = normal_form(S, B);
    c.cuspidal = !is_division(B);
    c.symbol = HilbertSymbolRep{c.n, S.K.disc()};
    c.B = std::move(B);
    out.push_back(std::move(c));
  }
  return out;
}

struct SimpleTypeCheck {
  bool proceed = false;
  std::string reason;
};

// The curve classification applies to ball quotients of simple type only;
// the other arithmetic ball quotients contain no geodesic curves at all.
inline SimpleTypeCheck simple_type_gate(bool simple_type) {
  SimpleTypeCheck out;
  if (simple_type) {
    out.proceed = true;
  } else {
    out.reason =
        "an arithmetic ball quotient not of simple type contains no geodesic curves";
  }
  return out;
}

}  // namespace shimura
