#pragma once

// Diagonal hermitian forms over an imaginary quadratic field, the trace
// form of a curve algebra, and the rank-3 extension that verifies a curve
// embeds in the ambient ball. Equivalence over an imaginary quadratic
// field is decided by rank, signature, and determinant class modulo norms.

#include <cstddef>
#include <string>
#include <vector>

#include "shimura/errors.hpp"
#include "shimura/picard_surface.hpp"
#include "shimura/qfield.hpp"
#include "shimura/quatalg.hpp"

namespace shimura {

struct HermForm {
  QuadField K;
  std::vector<Rational> diag;
};

inline HermForm make_herm_form(const QuadField& K, std::vector<Rational> diag) {
  if (!K.imaginary())
    throw invalid_input(errc::not_imaginary,
                        "hermitian forms are handled over imaginary fields only");
  for (const Rational& x : diag)
    if (x.numerator() == 0)
      throw invalid_input(errc::zero_argument, "degenerate diagonal entry");
  return HermForm{K, std::move(diag)};
}

struct Signature {
  int pos = 0;
  int neg = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature(const HermForm& h) {
  Signature s;
  for (const Rational& x : h.diag) (x > 0 ? s.pos : s.neg)++;
  return s;
}

inline Rational det(const HermForm& h) {
  Rational d(1);
  for (const Rational& x : h.diag) d *= x;
  return d;
}

// Nondegenerate hermitian forms over an imaginary quadratic field are
// classified by rank, signature, and determinant modulo norms of K.
inline bool is_equivalent(const HermForm& h1, const HermForm& h2) {
  if (!(h1.K == h2.K))
    throw invalid_input(errc::field_mismatch,
                        "forms over " + h1.K.name() + " and " + h2.K.name());
  if (h1.diag.size() != h2.diag.size()) return false;
  if (!(signature(h1) == signature(h2))) return false;
  return is_norm(h1.K, det(h1) / det(h2));
}

// Diagonalizes a nondegenerate hermitian 2x2 Gram matrix. The diagonal of
// a hermitian matrix is rational, and the norm form of an imaginary field
// is anisotropic, so the pivoting below always terminates.
inline HermForm diagonalize(const KMatrix2& g, const QuadField& K) {
  if (g.e[0][0].disc != K.disc() || !(g == g.conj_transpose()))
    throw invalid_input(errc::precondition_violation, "matrix is not hermitian over " + K.name());
  auto rat = [](const KElem& x) { return x.u; };
  Rational d00 = rat(g.e[0][0]);
  Rational d11 = rat(g.e[1][1]);
  Rational n01 = k_norm(g.e[0][1]);
  Rational dd = d00 * d11 - n01;  // determinant, rational for hermitian g
  if (d00.numerator() != 0) return make_herm_form(K, {d00, dd / d00});
  if (d11.numerator() != 0) return make_herm_form(K, {d11, dd / d11});
  if (n01.numerator() == 0)
    throw invalid_input(errc::precondition_violation, "degenerate hermitian matrix");
  // Both diagonal entries vanish: evaluate on e0 + g01*e1, which the
  // hyperbolic pairing sends to 2*N(g01) != 0.
  Rational p = 2 * n01;
  return make_herm_form(K, {p, dd / p});
}

// Gram matrix of (x, y) -> Trd(x * conj(y)) on the algebra (n, disc K)
// viewed as a left K-plane with basis {1, i}. Each entry runs through the
// element arithmetic and the matrix embedding rather than a closed form,
// so it cross-checks both.
inline KMatrix2 trace_form_gram(Int n, const QuadField& K) {
  if (!K.imaginary())
    throw invalid_input(errc::precondition_violation,
                        "trace form is computed over an imaginary field");
  if (n <= 0 || !factor(n).squarefree())
    throw invalid_input(errc::precondition_violation,
                        "normal form coefficient must be positive and squarefree");
  const Int a = n, b = K.disc();
  const QuatElement basis[2] = {quat_basis(0, a, b), quat_basis(1, a, b)};
  KMatrix2 g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      g.e[r][c] = matrix_embedding(quat_mul(basis[r], quat_conj(basis[c])), K).trace();
  return g;
}

inline HermForm trace_form(Int n, const QuadField& K) {
  return diagonalize(trace_form_gram(n, K), K);
}

// Extends the rank-2 trace form to the rank of the ambient form by one
// diagonal entry chosen to match determinants exactly.
inline HermForm extend_form(const HermForm& ambient, const HermForm& hB) {
  if (!(ambient.K == hB.K))
    throw invalid_input(errc::field_mismatch,
                        "forms over " + ambient.K.name() + " and " + hB.K.name());
  if (ambient.diag.size() != hB.diag.size() + 1)
    throw invalid_input(errc::precondition_violation,
                        "extension adds exactly one diagonal entry");
  Rational r = det(ambient) / det(hB);
  if (r <= 0)
    throw invalid_input(errc::not_totally_positive,
                        "determinant ratio is not positive");
  std::vector<Rational> diag = hB.diag;
  diag.push_back(r);
  return make_herm_form(ambient.K, std::move(diag));
}

inline HermForm default_ambient(const QuadField& K) {
  return make_herm_form(K, {Rational(1), Rational(1), Rational(-1)});
}

// Checks a curve class against the ambient form of the ball: the trace
// form of its normal-form algebra, extended by the determinant ratio, must
// be equivalent to the ambient hermitian form.
inline bool verify_curve(const BallSurface& S, const QuatAlg& B, const HermForm& ambient) {
  Int n = normal_form(S, B);
  HermForm hB = trace_form(n, S.K);
  HermForm HB = extend_form(ambient, hB);
  return is_equivalent(HB, ambient);
}

}  // namespace shimura
