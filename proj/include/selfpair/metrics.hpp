#pragma once

#include <cstdint>
#include <span>

#include "selfpair/image.hpp"

namespace selfpair {

/// Pixelwise counts with foreground as the positive class.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const SemanticMask& pred, const SemanticMask& gt);

// Both scores are 1 when tp + fp + fn == 0: nothing to find and nothing found.
double iou(const ConfusionCounts& c);
double f1(const ConfusionCounts& c);

struct MetricSummary {
  double iou = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;  // summed over all pairs
};

/// Micro: scores of the summed counts. Macro: mean of per-pair scores.
MetricSummary summarize(std::span<const ConfusionCounts> per_pair, bool macro = false);

}  // namespace selfpair
