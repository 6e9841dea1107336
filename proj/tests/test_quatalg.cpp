#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "shimura/errors.hpp"
#include "shimura/quatalg.hpp"

using namespace shimura;

namespace {

QuatAlg alg(std::initializer_list<Int> primes, bool with_inf = false) {
  std::vector<PlaceQ> v;
  if (with_inf) v.push_back(PlaceQ::infinite());
  for (Int p : primes) v.push_back(PlaceQ::finite(p));
  return QuatAlg(v);
}

QuatElement random_element(std::mt19937_64& rng, Int a, Int b) {
  QuatElement x{{}, a, b};
  for (int i = 0; i < 4; ++i) {
    Int num = static_cast<Int>(rng() % 13) - 6;
    Int den = 1 + static_cast<Int>(rng() % 3);
    x.c[i] = Rational(num, den);
  }
  return x;
}

}  // namespace

TEST_CASE("ramification sets are even, sorted, deduplicated") {
  QuatAlg B({PlaceQ::finite(3), PlaceQ::finite(2), PlaceQ::finite(3), PlaceQ::finite(2)});
  CHECK(B == alg({2, 3}));
  CHECK(B.str() == "{2,3}");
  CHECK_THROWS_AS(QuatAlg({PlaceQ::finite(2)}), invalid_input);
  CHECK(alg({}).str() == "{}");
  CHECK(alg({2}, true).ramified_at(PlaceQ::infinite()));
  CHECK_FALSE(alg({2}, true).indefinite());
  CHECK(alg({2, 3}).indefinite());
}

TEST_CASE("ramification from a symbol: known algebras") {
  CHECK(ram_from_symbol(1, 1) == alg({}));
  CHECK(ram_from_symbol(-1, -1) == alg({2}, true));   // Hamilton quaternions
  CHECK(ram_from_symbol(-2, -3) == alg({2}, true));   // same class as Hamilton
  CHECK(ram_from_symbol(-1, 3) == alg({2, 3}));
  CHECK(ram_from_symbol(2, 5) == alg({2, 5}));
  CHECK(ram_from_symbol(3, -4) == alg({2, 3}));
  CHECK_THROWS_AS(ram_from_symbol(0, 5), invalid_input);
}

TEST_CASE("ramification from a symbol matches the brute-force oracle") {
  for (Int a = -15; a <= 15; ++a) {
    if (a == 0) continue;
    for (Int b = -15; b <= 15; ++b) {
      if (b == 0) continue;
      INFO("a=" << a << " b=" << b);
      CHECK(ram_from_symbol(a, b) == oracles::brute_ram(a, b));
    }
  }
}

TEST_CASE("symbol search round-trips small ramification sets") {
  CHECK(symbol_from_ram(alg({})) == HilbertSymbolRep{1, 1});
  CHECK(symbol_from_ram(alg({2}, true)) == HilbertSymbolRep{-1, -1});
  CHECK(symbol_from_ram(alg({2, 3})) == HilbertSymbolRep{-1, 3});

  std::vector<PlaceQ> pool = {PlaceQ::infinite(), PlaceQ::finite(2), PlaceQ::finite(3),
                              PlaceQ::finite(5), PlaceQ::finite(7), PlaceQ::finite(11)};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      QuatAlg S({pool[i], pool[j]});
      HilbertSymbolRep rep = symbol_from_ram(S);
      INFO(S.str() << " -> (" << rep.a << "," << rep.b << ")");
      CHECK(ram_from_symbol(rep.a, rep.b) == S);
    }
  }
  CHECK_THROWS_AS(symbol_from_ram(alg({2, 3}), 3), invalid_input);
}

TEST_CASE("isomorphism and division") {
  CHECK(is_isomorphic(ram_from_symbol(-1, -1), ram_from_symbol(-2, -3)));
  CHECK_FALSE(is_isomorphic(ram_from_symbol(-1, -1), ram_from_symbol(-1, 3)));
  CHECK_FALSE(is_division(alg({})));
  CHECK(is_division(alg({2, 3})));
  CHECK(is_division(alg({2}, true)));
}

TEST_CASE("quadratic fields embed iff they kill all ramification") {
  QuadField Ki = make_field(-1);
  QuadField K5 = make_field(5);
  CHECK(embeds(Ki, alg({2}, true)));        // 2 ramifies in Q(i), infinity dies
  CHECK_FALSE(embeds(K5, alg({2}, true)));  // real field cannot kill infinity
  CHECK_FALSE(embeds(K5, alg({11, 2})));    // 11 splits in Q(sqrt(5))
  CHECK(embeds(K5, alg({2, 3})));
  CHECK(embeds(Ki, alg({})));

  for (Int d : {-1, -3, 5, 13}) {
    QuadField K = make_field(d);
    for (const QuatAlg& B :
         {alg({}), alg({2, 3}), alg({2, 5}), alg({3, 7}), alg({2}, true), alg({5}, true)}) {
      CHECK(embeds(K, B) == (tensor_ram(B, K) == TensorRam{}));
    }
  }
}

TEST_CASE("base change of ramification to a quadratic field") {
  QuadField K5 = make_field(5);  // 11 and 19 split, 2,3,7 inert, 5 ramifies
  TensorRam t = tensor_ram(alg({11, 3}), K5);
  REQUIRE(t.finite.size() == 2);
  CHECK(t.finite[0] == KPlace{11, 0, SplitType::Split});
  CHECK(t.finite[1] == KPlace{11, 1, SplitType::Split});
  CHECK_FALSE(t.real_pair);

  CHECK(tensor_ram(alg({2}, true), K5) == TensorRam{true, {}});
  CHECK(tensor_ram(alg({2, 5}), K5) == TensorRam{});

  QuadField Ki = make_field(-1);
  CHECK(tensor_ram(alg({2}, true), Ki) == TensorRam{});
  TensorRam ti = tensor_ram(alg({5, 13}), Ki);  // both split in Q(i)
  CHECK(ti.finite.size() == 4);
  CHECK(ti.finite[0].p == 5);
  CHECK(ti.finite[3] == KPlace{13, 1, SplitType::Split});
}

TEST_CASE("place construction over K validates tags") {
  CHECK_THROWS_AS(make_kplace(4, 0, SplitType::Inert), invalid_input);
  CHECK_THROWS_AS(make_kplace(3, 2, SplitType::Split), invalid_input);
  CHECK_THROWS_AS(make_kplace(3, 1, SplitType::Inert), invalid_input);
  CHECK(make_kplace(11, 1, SplitType::Split).str() == "11:1");
  CHECK(make_kplace(3, 0, SplitType::Inert).str() == "3");
}

TEST_CASE("quaternion multiplication matches the basis table") {
  std::mt19937_64 rng(11);
  for (auto [a, b] : std::vector<std::pair<Int, Int>>{
           {-1, -1}, {2, 5}, {-1, 3}, {3, -4}, {7, -8}}) {
    for (int trial = 0; trial < 60; ++trial) {
      QuatElement x = random_element(rng, a, b);
      QuatElement y = random_element(rng, a, b);
      CHECK(quat_mul(x, y) == oracles::table_quat_mul(x, y));
    }
  }
}

TEST_CASE("quaternion algebra identities") {
  std::mt19937_64 rng(13);
  const Int a = -2, b = 7;
  for (int trial = 0; trial < 40; ++trial) {
    QuatElement x = random_element(rng, a, b);
    QuatElement y = random_element(rng, a, b);
    QuatElement z = random_element(rng, a, b);
    CHECK(quat_mul(quat_mul(x, y), z) == quat_mul(x, quat_mul(y, z)));
    CHECK(quat_conj(quat_mul(x, y)) == quat_mul(quat_conj(y), quat_conj(x)));
    CHECK(reduced_trace(quat_mul(x, y)) == reduced_trace(quat_mul(y, x)));
    CHECK(reduced_norm(quat_mul(x, y)) == reduced_norm(x) * reduced_norm(y));
    CHECK(quat_mul(x, quat_conj(x)) == quat_scalar(reduced_norm(x), a, b));
    CHECK(quat_add(x, quat_conj(x)) == quat_scalar(reduced_trace(x), a, b));
  }
  QuatElement i = quat_basis(1, a, b), j = quat_basis(2, a, b), k = quat_basis(3, a, b);
  CHECK(quat_mul(i, i) == quat_scalar(Rational(a), a, b));
  CHECK(quat_mul(j, j) == quat_scalar(Rational(b), a, b));
  CHECK(quat_mul(i, j) == k);
  CHECK(quat_mul(j, i) == quat_conj(k));  // ji = -ij
}

TEST_CASE("elements of different algebras do not mix") {
  QuatElement x = quat_basis(1, -1, -1);
  QuatElement y = quat_basis(1, -1, 3);
  CHECK_THROWS_AS(quat_mul(x, y), invalid_input);
  CHECK_THROWS_AS(quat_add(x, y), invalid_input);
}

TEST_CASE("field elements over K") {
  KElem x{Rational(1, 2), Rational(3), -4};
  KElem y{Rational(2), Rational(-1), -4};
  CHECK(k_mul(x, y) == KElem{Rational(1) + Rational(12), Rational(11, 2), -4});
  CHECK(k_norm(x) == Rational(1, 4) + Rational(36));
  CHECK(k_conj(k_mul(x, y)) == k_mul(k_conj(x), k_conj(y)));
  CHECK(k_mul(x, k_conj(x)) == KElem{k_norm(x), Rational(0), -4});
  CHECK(k_div(k_mul(x, y), y) == x);
  CHECK_THROWS_AS(k_div(x, KElem{Rational(0), Rational(0), -4}), invalid_input);
  CHECK_THROWS_AS(k_add(x, KElem{Rational(1), Rational(0), -3}), invalid_input);
}

TEST_CASE("matrix embedding is a ring homomorphism") {
  std::mt19937_64 rng(17);
  QuadField Ki = make_field(-1);  // disc -4
  const Int n = 3, D = Ki.disc();
  for (int trial = 0; trial < 50; ++trial) {
    QuatElement x = random_element(rng, n, D);
    QuatElement y = random_element(rng, n, D);
    CHECK(matrix_embedding(quat_mul(x, y), Ki) ==
          kmat_mul(matrix_embedding(x, Ki), matrix_embedding(y, Ki)));
    CHECK(matrix_embedding(x, Ki).trace() ==
          KElem{reduced_trace(x), Rational(0), D});
    // determinant equals the reduced norm
    KMatrix2 m = matrix_embedding(x, Ki);
    KElem det = k_sub(k_mul(m.e[0][0], m.e[1][1]), k_mul(m.e[0][1], m.e[1][0]));
    CHECK(det == KElem{reduced_norm(x), Rational(0), D});
  }
}

TEST_CASE("matrix embedding sends j to a diagonal matrix") {
  QuadField Ki = make_field(-1);
  QuatElement j = quat_basis(2, 7, Ki.disc());
  KMatrix2 m = matrix_embedding(j, Ki);
  CHECK(m.e[0][0] == KElem{Rational(0), Rational(-1), -4});
  CHECK(m.e[1][1] == KElem{Rational(0), Rational(1), -4});
  CHECK(m.e[0][1] == KElem{Rational(0), Rational(0), -4});
  CHECK(m.e[1][0] == KElem{Rational(0), Rational(0), -4});
}

TEST_CASE("matrix embedding rejects a mismatched field") {
  QuadField Ki = make_field(-1);
  QuatElement z = quat_basis(1, 3, -3);  // algebra (3, -3), but disc(Q(i)) = -4
  CHECK_THROWS_AS(matrix_embedding(z, Ki), invalid_input);
}
