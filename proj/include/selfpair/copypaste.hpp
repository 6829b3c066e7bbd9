#pragma once

// Appearance of objects: instances copied out of one crop are pasted into
// the other crop at random free locations, then blended.

#include <cstddef>
#include <vector>

#include "selfpair/blend.hpp"
#include "selfpair/geometry.hpp"
#include "selfpair/image.hpp"
#include "selfpair/rng.hpp"

namespace selfpair {

struct Placement {
  int instance_id = 0;
  Rect source_bbox;
  Point target_offset;          // where source_bbox's top-left lands
  std::vector<Point> footprint; // instance pixels relative to source_bbox
};

struct PastePlan {
  std::vector<Placement> placements;
  std::vector<int> dropped_ids;  // chosen but found no free spot

  bool empty() const { return placements.empty(); }
};

inline constexpr std::size_t kDefaultMaxInstances = 8;
inline constexpr int kDefaultMaxAttempts = 20;

/// Chooses up to max_instances instances uniformly without replacement and
/// gives each a uniform in-bounds offset, redrawn up to max_attempts times
/// until it overlaps neither target foreground nor earlier placements.
PastePlan plan_paste(const InstanceSet& source_instances, const SemanticMask& target_label,
                     SeededRng& rng, std::size_t max_instances = kDefaultMaxInstances,
                     int max_attempts = kDefaultMaxAttempts);

struct PasteResult {
  RasterImage cp_image;
  SemanticMask cp_label;
  SemanticMask paste_mask;
};

PasteResult apply_paste(const RasterImage& target_image, const SemanticMask& target_label,
                        const RasterImage& source_image, const PastePlan& plan);

struct CopyPasteResult {
  RasterImage pre;
  RasterImage post;
  SemanticMask change;
  SemanticMask pre_label;
  SemanticMask post_label;
  PastePlan plan;
};

/// Pastes instances of `patch_pre` into `patch_post` and blends the result
/// against the untouched `patch_post`.
CopyPasteResult copy_paste_strategy(const Patch& patch_pre, const Patch& patch_post,
                                    const InstanceSet& pre_instances, const BlendSpec& spec,
                                    SeededRng& rng, std::size_t max_instances = kDefaultMaxInstances,
                                    int max_attempts = kDefaultMaxAttempts);

/// Same, with instances taken from the 8-connected components of patch_pre.label.
CopyPasteResult copy_paste_strategy(const Patch& patch_pre, const Patch& patch_post,
                                    const BlendSpec& spec, SeededRng& rng,
                                    std::size_t max_instances = kDefaultMaxInstances,
                                    int max_attempts = kDefaultMaxAttempts);

}  // namespace selfpair
