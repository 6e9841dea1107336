#pragma once

// Quaternionic surfaces uniformized by H^2 x H^2: a real quadratic field K
// and a quaternion K-algebra A, given by its ramification places. Decides
// whether the surface contains geodesic curves and enumerates the
// commensurability classes of curves it does contain.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "shimura/enumerate.hpp"
#include "shimura/errors.hpp"
#include "shimura/qfield.hpp"
#include "shimura/quatalg.hpp"

namespace shimura {

struct QuaternionSurface {
  QuadField K;
  std::vector<KPlace> ram;  // finite places of K where A ramifies, sorted
};

// Checks the surface data describes a quotient of H^2 x H^2: K totally
// real, each listed place consistent with how its prime splits in K, and
// evenly many ramified places. Consistency is reported before parity so a
// bad place never masquerades as a parity problem.
inline void validate_surface(const QuaternionSurface& S) {
  if (!S.K.totally_real())
    throw invalid_input(errc::not_totally_real,
                        S.K.name() + " is not totally real");
  for (const KPlace& w : S.ram) {
    SplitType actual = splitting(S.K, w.p);
    if (w.split != actual)
      throw invalid_input(errc::place_inconsistent_with_splitting,
                          "place over " + std::to_string(w.p) + " tagged " +
                              to_string(w.split) + " but " + std::to_string(w.p) +
                              " is " + to_string(actual) + " in " + S.K.name());
    if (w.tag == 1 && actual != SplitType::Split)
      throw invalid_input(errc::place_inconsistent_with_splitting,
                          "second place over " + std::to_string(w.p) +
                              " does not exist: not split in " + S.K.name());
  }
  if (S.ram.size() % 2 != 0)
    throw invalid_input(errc::odd_ramification,
                        "a quaternion algebra over " + S.K.name() +
                            " unramified at infinity ramifies at evenly many finite places");
}

inline QuaternionSurface make_surface(Int d, std::vector<KPlace> ram) {
  QuadField K = make_field(d);
  std::sort(ram.begin(), ram.end());
  ram.erase(std::unique(ram.begin(), ram.end()), ram.end());
  QuaternionSurface S{K, std::move(ram)};
  validate_surface(S);
  return S;
}

struct Admissibility {
  bool admissible = false;
  std::vector<Int> base;  // split primes with both places ramified
  std::string reason;     // set when not admissible
};

// A curve algebra over Q base-changes to ramification at both places over a
// split prime or at nothing, so the surface carries curves exactly when its
// ramification is a union of complete split pairs.
inline Admissibility admits_fuchsian(const QuaternionSurface& S) {
  validate_surface(S);
  Admissibility out;
  for (std::size_t i = 0; i < S.ram.size(); ++i) {
    const KPlace& w = S.ram[i];
    if (w.split != SplitType::Split) {
      out.reason = "ramified at the place over " + std::to_string(w.p) + ", which is " +
                   to_string(w.split) + " in " + S.K.name() +
                   "; base change from Q never ramifies there";
      return out;
    }
    if (w.tag == 0) {
      if (i + 1 >= S.ram.size() || S.ram[i + 1].p != w.p || S.ram[i + 1].tag != 1) {
        out.reason = "only one of the two places over the split prime " +
                     std::to_string(w.p) +
                     " is ramified; base change from Q ramifies both or neither";
        return out;
      }
      out.base.push_back(w.p);
      ++i;
    } else {
      out.reason = "only one of the two places over the split prime " +
                   std::to_string(w.p) +
                   " is ramified; base change from Q ramifies both or neither";
      return out;
    }
  }
  out.admissible = true;
  return out;
}

struct CurveClass {
  QuatAlg B;
  bool cocompact = false;
  HilbertSymbolRep symbol;
};

// Ramification sets over Q whose base change to K ramifies exactly at
// S.ram: the split base primes plus any finite set of non-split primes of
// the right parity. Ordered by the product of the non-split part.
namespace detail {
// limit bounds the number of sets, product_bound the product of the
// non-split part; either may be effectively infinite.
inline std::vector<QuatAlg> enumerate_ram_sets_core(const QuaternionSurface& S,
                                                    std::size_t limit,
                                                    Int product_bound) {
  Admissibility adm = admits_fuchsian(S);
  if (!adm.admissible) throw invalid_input(errc::not_admissible, adm.reason);
  std::vector<QuatAlg> out;
  if (limit == 0) return out;
  SubsetStream stream(S.K, static_cast<int>(adm.base.size() % 2));
  TensorRam want;
  for (Int p : adm.base) {
    want.finite.push_back(KPlace{p, 0, SplitType::Split});
    want.finite.push_back(KPlace{p, 1, SplitType::Split});
  }
  while (out.size() < limit && stream.peek_product() <= product_bound) {
    PrimeSet t = stream.next();
    std::vector<PlaceQ> ram;
    for (Int p : adm.base) ram.push_back(PlaceQ::finite(p));
    for (Int p : t.primes) ram.push_back(PlaceQ::finite(p));
    QuatAlg B(std::move(ram));
    if (tensor_ram(B, S.K) != want)
      throw internal_error(errc::internal_inconsistency,
                           "enumerated algebra " + B.str() +
                               " does not base-change to the surface ramification");
    out.push_back(std::move(B));
  }
  return out;
}
}  // namespace detail

inline std::vector<QuatAlg> enumerate_ram_sets(const QuaternionSurface& S,
                                               std::size_t limit) {
  return detail::enumerate_ram_sets_core(S, limit, std::numeric_limits<Int>::max());
}

// Every valid ramification set whose non-split part has product at most the
// bound, in enumeration order.
inline std::vector<QuatAlg> enumerate_ram_sets_bounded(const QuaternionSurface& S,
                                                       Int product_bound) {
  return detail::enumerate_ram_sets_core(S, std::numeric_limits<std::size_t>::max(),
                                         product_bound);
}

inline std::vector<CurveClass> enumerate_classes(const QuaternionSurface& S,
                                                 std::size_t limit) {
  std::vector<CurveClass> out;
  for (QuatAlg& B : enumerate_ram_sets(S, limit)) {
    CurveClass c;
    c.cocompact = is_division(B);
    c.symbol = symbol_from_ram(B);
    c.B = std::move(B);
    out.push_back(std::move(c));
  }
  return out;
}

// Curves lie in one commensurability class per isomorphism class of the
// algebra over Q. Distinct classes on one surface can only differ at
// non-split primes; a split prime in the symmetric difference would change
// the base-changed ramification, so it is flagged as an internal error.
inline bool same_class(const QuaternionSurface& S, const CurveClass& c1,
                       const CurveClass& c2) {
  bool iso = is_isomorphic(c1.B, c2.B);
  if (!iso && tensor_ram(c1.B, S.K) == tensor_ram(c2.B, S.K)) {
    std::vector<PlaceQ> sym;
    std::set_symmetric_difference(c1.B.ram().begin(), c1.B.ram().end(),
                                  c2.B.ram().begin(), c2.B.ram().end(),
                                  std::back_inserter(sym));
    for (const PlaceQ& v : sym)
      if (v.is_finite() && splitting(S.K, v.prime()) == SplitType::Split)
        throw internal_error(errc::internal_inconsistency,
                             "algebras with equal base change differ at the split prime " +
                                 std::to_string(v.prime()));
  }
  return iso;
}

struct SubfieldCheck {
  bool obstructed = false;
  std::string reason;
};

// Geodesic curves need a quadratic subfield of the field of definition.
// Odd degree rules one out; even degree leaves the question to the finer
// invariants.
inline SubfieldCheck no_quadratic_subfield(int degree) {
  if (degree < 1)
    throw invalid_input(errc::zero_argument, "field degree must be positive");
  SubfieldCheck out;
  if (degree % 2 != 0) {
    out.obstructed = true;
    out.reason = "a field of odd degree " + std::to_string(degree) +
                 " over Q contains no quadratic subfield, so the surface contains no "
                 "geodesic curves";
  }
  return out;
}

}  // namespace shimura
