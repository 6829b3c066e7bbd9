#include <doctest.h>

#include <random>

#include "selfpair/labelgen.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace selfpair;
using fixtures::mask_from_rows;

TEST_CASE("xor_change: worked examples") {
  const auto a = mask_from_rows({{1, 1}, {0, 0}});
  const auto b = mask_from_rows({{1, 0}, {1, 0}});
  CHECK(xor_change(a, b) == mask_from_rows({{0, 1}, {1, 0}}));
  CHECK(xor_change(a, a).count() == 0);
  CHECK_THROWS_AS(xor_change(a, SemanticMask::filled(3, 2, 0)), Error);
}

TEST_CASE("erase_change marks exactly the erased objects") {
  const auto label = mask_from_rows({{1, 1, 0, 1}, {1, 1, 0, 1}});
  const auto kept = mask_from_rows({{0, 0, 0, 1}, {0, 0, 0, 1}});
  CHECK(erase_change(label, kept) == mask_from_rows({{1, 1, 0, 0}, {1, 1, 0, 0}}));
}

TEST_CASE("mask algebra properties") {
  std::mt19937_64 gen(77);
  for (int i = 0; i < 300; ++i) {
    const int w = 1 + static_cast<int>(gen() % 70), h = 1 + static_cast<int>(gen() % 40);
    const auto a = fixtures::random_mask(gen, w, h, 0.3);
    const auto b = fixtures::random_mask(gen, w, h, 0.6);
    const auto c = fixtures::random_mask(gen, w, h, 0.5);
    const auto x = xor_change(a, b);
    CHECK(x == oracle::truth_table_xor(a, b));
    CHECK(x == xor_change(b, a));
    CHECK(xor_change(xor_change(a, b), c) == xor_change(a, xor_change(b, c)));
    CHECK(xor_change(x, b) == a);
    // |a xor b| = |a| + |b| - 2|a and b|
    CHECK(x.count() == a.count() + b.count() - 2 * mask_and(a, b).count());
    CHECK(mask_or(a, b) == mask_not(mask_and(mask_not(a), mask_not(b))));
    const auto e = erase_change(a, b);
    CHECK(mask_and(e, a) == e);  // never flags background
    CHECK(mask_and(e, b).count() == 0);
  }
}

TEST_CASE("xor_change against the truth table on a 2 x 2 case") {
  const auto a = mask_from_rows({{1, 0}, {0, 1}});
  const auto b = mask_from_rows({{1, 1}, {0, 0}});
  const auto expected = oracle::truth_table_xor(a, b);
  CHECK(expected == mask_from_rows({{0, 1}, {0, 1}}));
  CHECK(xor_change(a, b) == expected);
  CHECK(xor_change(SemanticMask::filled(2, 2, 0), b) == b);
}

TEST_CASE("erase_change with instance pixel sets") {
  // I1 has 3 pixels, I2 has 5; only I1 is kept.
  const auto label = mask_from_rows({{1, 1, 0, 0, 0},
                                     {1, 0, 0, 1, 1},
                                     {0, 0, 0, 1, 1},
                                     {0, 0, 0, 0, 1}});
  const auto i1 = mask_from_rows({{1, 1, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
  const auto i2 = mask_from_rows({{0, 0, 0, 0, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}});
  const auto change = erase_change(label, mask_not(i2));
  CHECK(change == i2);
  CHECK(change.count() == 5);
  CHECK(erase_change(label, SemanticMask::filled(5, 4, 1)).count() == 0);
  CHECK(erase_change(label, SemanticMask::filled(5, 4, 0)) == label);
  CHECK(erase_change(label, i2) == i1);
}
