#include <doctest.h>

#include <random>

#include "selfpair/components.hpp"
#include "selfpair/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace selfpair;

namespace {

std::vector<std::uint64_t> draws(SeededRng rng, int n) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < n; ++i) out.push_back(rng.next_u64());
  return out;
}

int first_difference(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TEST_CASE("derive_rng is a pure function of (seed, index)") {
  CHECK(draws(derive_rng(7, 0), 100) == draws(derive_rng(7, 0), 100));

  const int by_index = first_difference(draws(derive_rng(7, 0), 10), draws(derive_rng(7, 1), 10));
  CHECK(by_index >= 0);
  CHECK(by_index < 10);
  const int by_seed = first_difference(draws(derive_rng(7, 0), 10), draws(derive_rng(8, 0), 10));
  CHECK(by_seed >= 0);
  CHECK(by_seed < 10);
}

TEST_CASE("child streams ignore draws made on the parent") {
  SeededRng a = derive_rng(3, 9);
  SeededRng b = derive_rng(3, 9);
  for (int i = 0; i < 17; ++i) b.next_u64();
  CHECK(draws(a.child(4), 20) == draws(b.child(4), 20));
  CHECK(draws(a.child(4), 20) != draws(a.child(5), 20));
}

TEST_CASE("uniform_int stays in range and hits every value") {
  SeededRng rng(42);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.uniform_int(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    ++hist[static_cast<std::size_t>(v + 3)];
  }
  for (int h : hist) CHECK(h > 800);
  CHECK(rng.uniform_int(5, 5) == 5);
  CHECK_THROWS_AS(rng.uniform_int(2, 1), Error);
}

TEST_CASE("sample_without_replacement yields distinct indices") {
  SeededRng rng(1);
  auto s = rng.sample_without_replacement(10, 4);
  CHECK(s.size() == 4);
  std::sort(s.begin(), s.end());
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(rng.sample_without_replacement(3, 8).size() == 3);
  CHECK(rng.sample_without_replacement(0, 2).empty());
}

TEST_CASE("raster invariants are enforced at construction") {
  CHECK_THROWS_AS(RasterImage(0, 3, 1), Error);
  CHECK_THROWS_AS(RasterImage(2, 2, 2), Error);
  CHECK_THROWS_AS(RasterImage(2, 2, 1, std::vector<std::uint8_t>(3)), Error);
  CHECK_THROWS_AS(SemanticMask(2, 1, std::vector<std::uint8_t>{0, 2}), Error);
  const RasterImage img(3, 2, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18});
  const RasterImage c = img.crop({1, 1, 1, 2});
  CHECK(c.width() == 2);
  CHECK(c.at(0, 0, 0) == 13);
  CHECK(c.at(0, 1, 2) == 18);
  CHECK_THROWS_AS(img.crop({1, 1, 2, 2}), Error);
}

TEST_CASE("connected_components: worked examples") {
  CHECK(connected_components(SemanticMask::filled(4, 4, 0)).empty());

  auto diag = SemanticMask(4, 4, std::vector<std::uint8_t>(16, 0));
  diag = fixtures::mask_from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto one = connected_components(diag);
  REQUIRE(one.size() == 1);
  CHECK(one.instances[0].pixels.size() == 2);

  const auto m = fixtures::mask_from_rows(
      {{1, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 1}});
  const auto two = connected_components(m);
  REQUIRE(two.size() == 2);
  // Frozen from the union-find oracle: {(0,0),(0,1)} then {(4,4)}.
  const auto expected = oracle::components(m);
  CHECK(expected.size() == 2);
  CHECK(two.instances[0].id == 1);
  CHECK(two.instances[0].pixels == std::vector<Point>{{0, 0}, {0, 1}});
  CHECK(two.instances[1].id == 2);
  CHECK(two.instances[1].pixels == std::vector<Point>{{4, 4}});
}

TEST_CASE("connected_components partitions the foreground (property)") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 1 + static_cast<int>(gen() % 24);
    const int h = 1 + static_cast<int>(gen() % 24);
    const auto m = fixtures::random_mask(gen, w, h, 0.1 + 0.05 * (trial % 10));
    const auto inst = connected_components(m);

    std::set<std::set<Point>> got;
    std::size_t total = 0;
    int prev_first = -1;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const auto& px = inst.instances[i].pixels;
      CHECK(inst.instances[i].id == static_cast<int>(i) + 1);
      const int first = px.front().row * w + px.front().col;
      CHECK(first > prev_first);  // scan order of first pixel
      prev_first = first;
      got.insert(std::set<Point>(px.begin(), px.end()));
      total += px.size();
    }
    CHECK(total == m.count());  // disjoint + covering, together with the set equality below
    CHECK(got == oracle::components(m));
    CHECK(union_mask(w, h, inst.instances) == m);
  }
}

TEST_CASE("instance-id rasters bypass component labelling") {
  // Two touching objects with different ids stay separate.
  const std::vector<std::uint16_t> ids{3, 3, 7, 0, 7, 7};
  const auto set = instances_from_ids(3, 2, ids);
  REQUIRE(set.size() == 2);
  CHECK(set.instances[0].id == 3);
  CHECK(set.instances[0].pixels.size() == 2);
  CHECK(set.instances[1].id == 7);
  CHECK(set.instances[1].pixels.size() == 3);
}

TEST_CASE("InstanceSet::clip translates and drops") {
  InstanceSet s{{{1, {{0, 0}, {5, 5}}}, {2, {{9, 9}}}}};
  const auto c = s.clip({4, 4, 3, 3});
  REQUIRE(c.size() == 1);
  CHECK(c.instances[0].id == 1);
  CHECK(c.instances[0].pixels == std::vector<Point>{{1, 1}});
}

TEST_CASE("intersection_area") {
  CHECK(intersection_area({0, 0, 4, 4}, {4, 0, 4, 4}) == 0);
  CHECK(intersection_area({0, 0, 4, 4}, {2, 2, 4, 4}) == 4);
  CHECK(intersection_area({0, 0, 4, 4}, {1, 1, 1, 1}) == 1);
}
