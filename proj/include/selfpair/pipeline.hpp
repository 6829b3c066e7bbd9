#pragma once

// Sample synthesis: draw a manipulation strategy per sample, apply it to a
// single source and emit a checked (pre, post, change) triple.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfpair/blend.hpp"
#include "selfpair/copypaste.hpp"
#include "selfpair/image.hpp"
#include "selfpair/rng.hpp"

namespace selfpair {

enum class Strategy { crop = 0, inpaint = 1, copy_paste = 2 };

inline constexpr Strategy kAllStrategies[] = {Strategy::crop, Strategy::inpaint,
                                              Strategy::copy_paste};

std::string_view to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view text);

struct PipelineConfig {
  int crop_size = 256;
  std::vector<Strategy> strategies{Strategy::crop, Strategy::inpaint, Strategy::copy_paste};
  /// One weight per entry of `strategies`; empty means equal weights.
  std::vector<double> strategy_weights;
  BlendSpec blend;
  double erase_fraction = 0.5;
  int dilation = 2;
  int telea_radius = 5;
  std::size_t max_instances = kDefaultMaxInstances;
  int max_attempts = kDefaultMaxAttempts;
  std::uint64_t global_seed = 0;
  std::size_t samples_per_source = 1;
  bool swap_inpaint_order = false;
  /// Crop inpainting outputs to crop_size so every sample has the same shape.
  bool normalize_size = true;

  /// Throws InvalidArgument on any broken invariant.
  void validate() const;
  std::vector<double> effective_weights() const;
};

struct Source {
  std::string id;
  RasterImage image;
  SemanticMask label;
  InstanceSet instances;
};

/// Source whose instances are the 8-connected components of `label`.
Source make_source(std::string id, RasterImage image, SemanticMask label);

struct PastedInstance {
  int instance_id = 0;
  Rect source_bbox;
  Point target_offset;
};

struct Provenance {
  Provenance(SemanticMask pre, SemanticMask post)
      : pre_label(std::move(pre)), post_label(std::move(post)) {}

  SemanticMask pre_label;
  SemanticMask post_label;

  std::string source_id;
  Strategy requested = Strategy::crop;
  Strategy strategy = Strategy::crop;
  std::vector<std::string> fallbacks;  // "<strategy>: <reason>" for each failed attempt
  std::uint64_t global_seed = 0;
  std::uint64_t sample_index = 0;

  std::optional<Point> crop_pre_origin;
  std::optional<Point> crop_post_origin;
  std::optional<int> rotation;
  std::vector<int> erased_ids;
  std::vector<PastedInstance> pasted;
  std::vector<int> dropped_ids;
  std::optional<BlendSpec> blend;
  std::optional<Rect> window;  // size normalization crop, source coordinates
  bool swapped = false;
};

struct ChangeSample {
  RasterImage pre;
  RasterImage post;
  SemanticMask change;
  Provenance provenance;
};

/// Strategy for one sample, drawn from the configured weights.
Strategy draw_strategy(const PipelineConfig& cfg, std::uint64_t sample_index);

/// Throws SourceUnusable when every enabled strategy fails on this source.
ChangeSample synthesize_sample(const Source& source, const PipelineConfig& cfg,
                               std::uint64_t sample_index);

/// Throws LabelCheckFailed unless change == pre_label XOR post_label.
void verify_change_label(const ChangeSample& sample);

struct SourceFailure {
  std::size_t source_index = 0;
  std::string source_id;
  std::size_t failed_samples = 0;
  std::string message;
};

struct DatasetReport {
  std::size_t emitted = 0;
  std::vector<SourceFailure> failures;  // ascending source_index
};

using SourceLoader = std::function<Source(std::size_t source_index)>;
/// Called from worker threads; must be thread-safe.
using SampleSink = std::function<void(ChangeSample&&)>;

inline std::uint64_t global_sample_index(std::size_t source_index, std::size_t sample,
                                         std::size_t samples_per_source) {
  return static_cast<std::uint64_t>(source_index) * samples_per_source + sample;
}

/// samples_per_source samples for each source; source i, sample j gets global
/// index i * samples_per_source + j. Emission order depends on scheduling,
/// content does not.
DatasetReport synthesize_dataset(std::size_t source_count, const SourceLoader& load,
                                 const PipelineConfig& cfg, unsigned jobs, const SampleSink& sink);

std::vector<ChangeSample> synthesize_dataset(std::span<const Source> sources,
                                             const PipelineConfig& cfg, unsigned jobs = 1,
                                             DatasetReport* report = nullptr);

}  // namespace selfpair
