#pragma once

// Random crop-and-rotate pairing: two non-overlapping square patches from one
// source, the second turned by a random multiple of 90 degrees.

#include <utility>

#include "selfpair/image.hpp"
#include "selfpair/rng.hpp"

namespace selfpair {

struct Patch {
  RasterImage image;
  SemanticMask label;
  Point origin;  // top-left corner in the source
};

/// Clockwise quarter turns.
struct Rotation {
  int quarter_turns = 0;

  Rotation() = default;
  explicit Rotation(int turns);
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

inline constexpr int kMaxCropRejections = 100;

/// Two size x size patches with zero-area intersection, image and label cut at
/// the same origin. Throws InfeasibleCrop when no disjoint pair fits.
std::pair<Patch, Patch> sample_disjoint_crops(const RasterImage& image, const SemanticMask& label,
                                              int size, SeededRng& rng);

/// True iff two disjoint size x size placements fit in a width x height grid.
bool disjoint_crops_feasible(int width, int height, int size);

RasterImage rotate(const RasterImage& image, Rotation rot);
SemanticMask rotate(const SemanticMask& mask, Rotation rot);
Patch rotate(const Patch& patch, Rotation rot);

struct CropPair {
  Patch pre;
  Patch post;        // rotated
  Rotation rotation;
};

/// First patch as-is for t0, second patch rotated by a uniformly drawn
/// Rotation for t1.
CropPair crop_pair_strategy(const RasterImage& image, const SemanticMask& label, int size,
                            SeededRng& rng);

}  // namespace selfpair
