#pragma once

// Object removal: erase sampled instances and fill the hole with Telea's
// fast-marching inpainting.

#include <cstddef>
#include <vector>

#include "selfpair/image.hpp"
#include "selfpair/rng.hpp"

namespace selfpair {

/// Fast-marching record of one inpainting run: arrival time per pixel (0 on
/// known pixels) and the order in which hole pixels were filled.
struct FillTrace {
  std::vector<double> arrival;
  std::vector<std::size_t> order;
};

/// Arrival times of the front that starts on the known pixels, computed with
/// first-order upwind fast marching on the 4-neighbour grid. Fills `order`
/// with hole pixels in the sequence they were frozen.
FillTrace fast_march(const HoleMask& hole);

/// Fills every hole pixel, in fast-marching order, with the weighted average
/// of known or already-filled pixels within `radius` (direction, distance and
/// level-set weights). Known pixels are returned untouched.
RasterImage telea_inpaint(const RasterImage& image, const HoleMask& hole, int radius,
                          FillTrace* trace = nullptr);

/// Chebyshev (square) dilation by `pixels`.
SemanticMask dilate(const SemanticMask& mask, int pixels);

struct EraseOptions {
  double erase_fraction = 0.5;
  int dilation = 2;
  int radius = 5;
  bool swap_order = false;  // false: pre = inpainted, post = original
};

struct EraseResult {
  RasterImage pre;
  RasterImage post;
  SemanticMask change;
  SemanticMask pre_label;
  SemanticMask post_label;
  std::vector<int> erased_ids;  // ascending
  HoleMask hole;
};

/// Erases ceil(erase_fraction * |instances|) instances drawn uniformly
/// without replacement. The hole is the dilated union of the erased objects
/// minus the pixels of objects that stay, so surviving buildings are never
/// painted over. The change label covers exactly the erased objects.
EraseResult erase_instances_strategy(const RasterImage& image, const SemanticMask& label,
                                     const InstanceSet& instances, SeededRng& rng,
                                     const EraseOptions& options = {});

}  // namespace selfpair
