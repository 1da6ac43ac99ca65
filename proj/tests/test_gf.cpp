#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "frobscan/gf.hpp"
#include "oracles.hpp"

using namespace frobscan;

TEST_CASE("make_field validates inputs") {
  CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(5, 40), std::overflow_error);  // 5^40 > 2^63
  CHECK(Field::make(5, 1)->size() == 5);
}

TEST_CASE("modulus is the first irreducible in enumeration order") {
  // independent derivation: enumerate monic polynomials in the declared
  // order and take the first brute-force-irreducible one
  for (auto [p, k] : std::vector<std::pair<u64, int>>{
           {5, 2}, {5, 3}, {5, 4}, {7, 2}, {7, 3}, {11, 2}, {13, 2}}) {
    std::vector<u64> expected;
    for (auto& f : oracles::monic_polys_in_modulus_order(p, k)) {
      if (oracles::irreducible_bruteforce(f, p)) {
        expected = f;
        break;
      }
    }
    auto F = Field::make(p, k);
    CHECK(F->modulus() == expected);
  }
  // frozen value: F_25 gets x^2 + 2
  CHECK(Field::make(5, 2)->modulus() == std::vector<u64>{2, 0, 1});
  // prime fields use the convention x - 0
  CHECK(Field::make(5, 1)->modulus() == std::vector<u64>{0, 1});
}

TEST_CASE("make_field is deterministic") {
  auto a = Field::make(7, 3);
  auto b = Field::make(7, 3);
  CHECK(a->modulus() == b->modulus());
  CHECK(a->size() == b->size());
}

TEST_CASE("element enumeration order and count") {
  auto F5 = Field::make(5, 1);
  std::vector<u64> seen;
  for (Elt e : elements(F5)) seen.push_back(e.code);
  CHECK(seen == std::vector<u64>{0, 1, 2, 3, 4});

  auto F25 = Field::make(5, 2);
  int count = 0;
  Elt first = F25->zero(), last = F25->zero();
  for (Elt e : elements(F25)) {
    if (count == 0) first = e;
    last = e;
    ++count;
  }
  CHECK(count == 25);
  CHECK(first == F25->zero());
  CHECK(F25->coeffs(last) == std::vector<u64>{4, 4});

  auto F49 = Field::make(7, 2);
  int n49 = 0;
  for (Elt e : elements(F49)) {
    (void)e;
    ++n49;
  }
  CHECK(n49 == 49);
}

TEST_CASE("basic arithmetic in F_5") {
  auto F = Field::make(5, 1);
  CHECK(F->inv(F->from_int(2)) == F->from_int(3));
  CHECK((F->from_int(2) * F->from_int(3)) == F->one());
  CHECK((F->from_int(4) + F->from_int(3)) == F->from_int(2));
  CHECK((F->from_int(1) - F->from_int(3)) == F->from_int(3));
  CHECK_THROWS_AS(F->inv(F->zero()), std::domain_error);
}

TEST_CASE("x * x reduces by the modulus in F_25") {
  auto F = Field::make(5, 2);  // modulus x^2 + 2
  Elt x = F->from_code(F->encode_raw(std::vector<u64>{0, 1}.data()));
  CHECK(F->coeffs(x) == std::vector<u64>{0, 1});
  Elt x2 = x * x;  // x^2 = -2 = 3
  CHECK(x2 == F->from_int(3));
}

TEST_CASE("a^(q-1) = 1 for every nonzero a") {
  for (auto [p, k] : std::vector<std::pair<u64, int>>{{5, 1}, {7, 2}, {5, 3}}) {
    auto F = Field::make(p, k);
    for (Elt a : elements(F)) {
      if (a == F->zero()) continue;
      CHECK(F->pow(a, F->size() - 1) == F->one());
      CHECK(a * F->inv(a) == F->one());
    }
  }
}

TEST_CASE("is_square in F_5 and zero") {
  auto F = Field::make(5, 1);
  std::map<u64, bool> expected{{0, true}, {1, true}, {2, false},
                               {3, false}, {4, true}};
  for (auto& [code, want] : expected)
    CHECK(F->is_square(F->from_code(code)) == want);
}

TEST_CASE("prime-subfield non-squares become squares in F_25") {
  auto F5 = Field::make(5, 1);
  auto F25 = Field::make(5, 2);
  for (u64 v = 1; v < 5; ++v) {
    bool sq5 = F5->is_square(F5->from_code(v));
    bool sq25 = F25->is_square(F25->from_int(static_cast<i64>(v)));
    CHECK(sq25);  // every prime-subfield element is a square in the quadratic extension
    (void)sq5;
  }
}

TEST_CASE("is_square agrees with the exhaustive-squares oracle up to q = 2500") {
  std::vector<std::pair<u64, int>> fields;
  for (u64 p = 5; p <= 2500; ++p)
    if (is_prime_u64(p)) fields.push_back({p, 1});
  for (auto pk : std::vector<std::pair<u64, int>>{{5, 2}, {5, 3}, {5, 4},
                                                  {7, 2}, {7, 3}, {7, 4},
                                                  {11, 2}, {13, 2}, {17, 2},
                                                  {19, 2}, {23, 2}, {29, 2},
                                                  {31, 2}, {37, 2}, {41, 2},
                                                  {43, 2}, {47, 2}, {11, 3},
                                                  {13, 3}})
    fields.push_back(pk);
  for (auto [p, k] : fields) {
    auto F = Field::make(p, k);
    auto squares = oracles::exhaustive_squares(*F);
    i64 square_count = 0;
    for (u64 code = 0; code < F->size(); ++code) {
      bool is_sq = F->is_square(F->from_code(code));
      REQUIRE(is_sq == static_cast<bool>(squares[code]));
      if (is_sq) ++square_count;
      // chi matches: 0 at zero, +-1 elsewhere
      int c = F->chi(F->from_code(code));
      REQUIRE(c == (code == 0 ? 0 : (is_sq ? 1 : -1)));
    }
    REQUIRE(square_count == static_cast<i64>((F->size() + 1) / 2));
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre_symbol(-3, 5) == -1);
  CHECK(legendre_symbol(-4, 5) == 1);
  CHECK(legendre_symbol(10, 5) == 0);
  CHECK(legendre_symbol(-3, 7) == 1);
  CHECK(legendre_symbol(-4, 7) == -1);
  CHECK_THROWS_AS(legendre_symbol(3, 10), std::invalid_argument);
  CHECK_THROWS_AS(legendre_symbol(3, 2), std::invalid_argument);
}

TEST_CASE("frobenius fixes the prime field and has order k") {
  auto F = Field::make(5, 3);
  for (i64 v = 0; v < 5; ++v) {
    Elt a = F->from_int(v);
    CHECK(F->frobenius(a, 1) == a);
    CHECK(F->frobenius(a, 2) == a);
  }
  for (Elt a : elements(F)) {
    CHECK(F->frobenius(a, 3) == a);
    CHECK(F->frobenius(F->frobenius(a, 1), 1) == F->frobenius(a, 2));
  }
}

TEST_CASE("frobenius orbit sizes partition p^k into divisors of k") {
  for (auto [p, k] : std::vector<std::pair<u64, int>>{{5, 2}, {5, 3}, {7, 2},
                                                      {5, 4}}) {
    auto F = Field::make(p, k);
    std::vector<bool> visited(F->size(), false);
    std::map<int, i64> orbits_of_size;
    for (u64 code = 0; code < F->size(); ++code) {
      if (visited[code]) continue;
      int len = 0;
      u64 x = code;
      do {
        visited[x] = true;
        ++len;
        x = F->frobenius(F->from_code(x), 1).code;
      } while (x != code);
      CHECK(k % len == 0);
      ++orbits_of_size[len];
    }
    i64 total = 0;
    for (auto& [d, n] : orbits_of_size) total += static_cast<i64>(d) * n;
    CHECK(total == static_cast<i64>(F->size()));
    // orbits of size 1 are exactly the prime field
    CHECK(orbits_of_size[1] == static_cast<i64>(p));
  }
}

TEST_CASE("mixing elements of different descriptors is rejected") {
  auto F5 = Field::make(5, 1);
  auto F7 = Field::make(7, 1);
  CHECK_THROWS_AS(F5->from_int(1) + F7->from_int(1), std::invalid_argument);
}
