#include "selfpair/copypaste.hpp"

#include <algorithm>

#include "selfpair/components.hpp"
#include "selfpair/labelgen.hpp"

namespace selfpair {

PastePlan plan_paste(const InstanceSet& source_instances, const SemanticMask& target_label,
                     SeededRng& rng, std::size_t max_instances, int max_attempts) {
  if (max_instances < 1) throw Error(ErrorCode::InvalidArgument, "max_instances must be >= 1");
  const int w = target_label.width();
  const int h = target_label.height();
  std::vector<std::uint8_t> occupied(target_label.data().begin(), target_label.data().end());
  PastePlan plan;

  const auto chosen = rng.sample_without_replacement(source_instances.size(), max_instances);
  for (const std::size_t idx : chosen) {
    const Instance& inst = source_instances.instances[idx];
    const Rect box = inst.bounding_box();
    if (inst.pixels.empty() || box.height > h || box.width > w) {
      plan.dropped_ids.push_back(inst.id);
      continue;
    }
    std::vector<Point> footprint;
    footprint.reserve(inst.pixels.size());
    for (const Point& p : inst.pixels) footprint.push_back({p.row - box.row, p.col - box.col});

    bool placed = false;
    for (int attempt = 0; attempt < max_attempts && !placed; ++attempt) {
      const Point off{static_cast<int>(rng.uniform_int(0, h - box.height)),
                      static_cast<int>(rng.uniform_int(0, w - box.width))};
      const bool free = std::none_of(footprint.begin(), footprint.end(), [&](const Point& p) {
        return occupied[static_cast<std::size_t>(off.row + p.row) * w + off.col + p.col] != 0;
      });
      if (!free) continue;
      for (const Point& p : footprint) {
        occupied[static_cast<std::size_t>(off.row + p.row) * w + off.col + p.col] = 1;
      }
      plan.placements.push_back({inst.id, box, off, std::move(footprint)});
      placed = true;
    }
    if (!placed) plan.dropped_ids.push_back(inst.id);
  }
  return plan;
}

PasteResult apply_paste(const RasterImage& target_image, const SemanticMask& target_label,
                        const RasterImage& source_image, const PastePlan& plan) {
  require_same_dims(target_image, target_label, "apply_paste");
  if (source_image.channels() != target_image.channels()) {
    throw Error(ErrorCode::DimensionMismatch, "apply_paste: channel counts differ");
  }
  const int w = target_image.width();
  const int h = target_image.height();
  const int ch = target_image.channels();
  std::vector<std::uint8_t> pixels(target_image.data().begin(), target_image.data().end());
  std::vector<std::uint8_t> labels(target_label.data().begin(), target_label.data().end());
  std::vector<std::uint8_t> pasted(labels.size(), 0);

  for (const Placement& pl : plan.placements) {
    for (const Point& p : pl.footprint) {
      const int sr = pl.source_bbox.row + p.row;
      const int sc = pl.source_bbox.col + p.col;
      const int tr = pl.target_offset.row + p.row;
      const int tc = pl.target_offset.col + p.col;
      if (sr < 0 || sr >= source_image.height() || sc < 0 || sc >= source_image.width() ||
          tr < 0 || tr >= h || tc < 0 || tc >= w) {
        throw Error(ErrorCode::PlanOutOfBounds,
                    "placement of instance " + std::to_string(pl.instance_id) + " leaves the grid");
      }
      const std::size_t t = static_cast<std::size_t>(tr) * w + tc;
      for (int k = 0; k < ch; ++k) pixels[t * ch + k] = source_image.at(sr, sc, k);
      labels[t] = 1;
      pasted[t] = 1;
    }
  }
  return PasteResult{RasterImage(w, h, ch, std::move(pixels)),
                     SemanticMask(w, h, std::move(labels)), SemanticMask(w, h, std::move(pasted))};
}

CopyPasteResult copy_paste_strategy(const Patch& patch_pre, const Patch& patch_post,
                                    const InstanceSet& pre_instances, const BlendSpec& spec,
                                    SeededRng& rng, std::size_t max_instances, int max_attempts) {
  require_same_dims(patch_pre.image, patch_post.image, "copy_paste_strategy");
  spec.validate();
  PastePlan plan = plan_paste(pre_instances, patch_post.label, rng, max_instances, max_attempts);
  PasteResult pasted = apply_paste(patch_post.image, patch_post.label, patch_pre.image, plan);
  RasterImage post = blend(patch_post.image, pasted.cp_image, pasted.paste_mask, spec);
  SemanticMask change = xor_change(patch_pre.label, pasted.cp_label);
  return CopyPasteResult{patch_pre.image, std::move(post),           std::move(change),
                         patch_pre.label, std::move(pasted.cp_label), std::move(plan)};
}

CopyPasteResult copy_paste_strategy(const Patch& patch_pre, const Patch& patch_post,
                                    const BlendSpec& spec, SeededRng& rng,
                                    std::size_t max_instances, int max_attempts) {
  return copy_paste_strategy(patch_pre, patch_post, connected_components(patch_pre.label), spec,
                             rng, max_instances, max_attempts);
}

}  // namespace selfpair
