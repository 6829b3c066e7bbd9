#include <doctest.h>

#include <algorithm>
#include <random>

#include "selfpair/geometry.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace selfpair;

namespace {

Rect rect_of(const Patch& p) { return {p.origin.row, p.origin.col, p.image.height(), p.image.width()}; }

std::vector<std::uint8_t> sorted_bytes(std::span<const std::uint8_t> d) {
  std::vector<std::uint8_t> v(d.begin(), d.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("feasibility matches the brute-force oracle") {
  for (int w = 1; w <= 9; ++w) {
    for (int h = 1; h <= 9; ++h) {
      for (int s = 1; s <= 9; ++s) {
        CHECK_MESSAGE(disjoint_crops_feasible(w, h, s) == oracle::disjoint_pair_exists(w, h, s),
                      w << "x" << h << " s=" << s);
      }
    }
  }
}

TEST_CASE("sample_disjoint_crops on a 512 x 513 source") {
  const RasterImage img = RasterImage::filled(513, 512, 1, 7);
  const SemanticMask lab = SemanticMask::filled(513, 512, 0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SeededRng rng(seed);
    const auto [a, b] = sample_disjoint_crops(img, lab, 256, rng);
    CHECK(intersection_area(rect_of(a), rect_of(b)) == 0);
    CHECK(a.image.width() == 256);
    CHECK(b.label.height() == 256);
  }
}

TEST_CASE("infeasible crop size throws") {
  const RasterImage img = RasterImage::filled(512, 512, 3, 0);
  const SemanticMask lab = SemanticMask::filled(512, 512, 0);
  SeededRng rng(1);
  CHECK_THROWS_AS(sample_disjoint_crops(img, lab, 512, rng), Error);
  try {
    sample_disjoint_crops(img, lab, 300, rng);
    FAIL("expected InfeasibleCrop");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleCrop);
  }
}

TEST_CASE("narrow sources go through the exhaustive fallback") {
  // Only a handful of disjoint pairs exist; rejection rarely finds them.
  std::mt19937_64 gen(3);
  const RasterImage img = fixtures::random_image(gen, 41, 21, 1);
  const SemanticMask lab = fixtures::random_mask(gen, 41, 21);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SeededRng rng(seed);
    const auto [a, b] = sample_disjoint_crops(img, lab, 20, rng);
    const Rect ra = rect_of(a), rb = rect_of(b);
    CHECK(intersection_area(ra, rb) == 0);
    CHECK(ra.col + 20 <= 41);
    CHECK(a.image == img.crop(ra));
    CHECK(b.label == lab.crop(rb));
  }
}

TEST_CASE("rotate: worked example and identities") {
  const RasterImage m(2, 2, 1, {1, 2, 3, 4});
  CHECK(rotate(m, Rotation(1)) == RasterImage(2, 2, 1, {3, 1, 4, 2}));
  CHECK(rotate(m, Rotation(2)) == RasterImage(2, 2, 1, {4, 3, 2, 1}));
  CHECK(rotate(m, Rotation(0)) == m);
  CHECK_THROWS_AS(Rotation(4), Error);

  std::mt19937_64 gen(11);
  for (int i = 0; i < 50; ++i) {
    const int w = 1 + static_cast<int>(gen() % 9), h = 1 + static_cast<int>(gen() % 9);
    const RasterImage img = fixtures::random_image(gen, w, h, i % 2 ? 3 : 1);
    const SemanticMask lab = fixtures::random_mask(gen, w, h);
    RasterImage r = img;
    for (int k = 0; k < 4; ++k) r = rotate(r, Rotation(1));
    CHECK(r == img);
    const Rotation q(static_cast<int>(gen() % 4));
    const RasterImage ri = rotate(img, q);
    if (q.quarter_turns % 2) CHECK(ri.width() == h);
    CHECK(sorted_bytes(ri.data()) == sorted_bytes(img.data()));
    CHECK(rotate(lab, q).count() == lab.count());
    // Lockstep: rotating a patch applies the same turn to image and label.
    const Patch p = rotate(Patch{img, lab, {0, 0}}, q);
    CHECK(p.image == ri);
    CHECK(p.label == rotate(lab, q));
  }
}

TEST_CASE("crop_pair_strategy keeps image and label aligned") {
  const auto scene = fixtures::building_scene(4, 96, 64, 6, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    const CropPair cp = crop_pair_strategy(scene.image, scene.label, 32, rng);
    const Rect rpre = rect_of(cp.pre);
    CHECK(cp.pre.image == scene.image.crop(rpre));
    CHECK(cp.pre.label == scene.label.crop(rpre));
    const Rect rpost{cp.post.origin.row, cp.post.origin.col, 32, 32};
    CHECK(intersection_area(rpre, rpost) == 0);
    CHECK(cp.post.image == rotate(scene.image.crop(rpost), cp.rotation));
    CHECK(cp.post.label == rotate(scene.label.crop(rpost), cp.rotation));
  }
}
