#include "selfpair/metrics.hpp"

#include "selfpair/simd/kernels.hpp"

namespace selfpair {

ConfusionCounts confusion(const SemanticMask& pred, const SemanticMask& gt) {
  require_same_dims(pred, gt, "confusion");
  const auto t = simd::kernels().tally(pred.data().data(), gt.data().data(), pred.size());
  ConfusionCounts c;
  c.tp = t.both;
  c.fp = t.only_a;
  c.fn = t.only_b;
  c.tn = pred.size() - t.both - t.only_a - t.only_b;
  return c;
}

double iou(const ConfusionCounts& c) {
  const std::uint64_t denom = c.tp + c.fp + c.fn;
  return denom == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f1(const ConfusionCounts& c) {
  const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
  return denom == 0 ? 1.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

MetricSummary summarize(std::span<const ConfusionCounts> per_pair, bool macro) {
  MetricSummary s;
  for (const auto& c : per_pair) s.counts += c;
  if (!macro || per_pair.empty()) {
    s.iou = iou(s.counts);
    s.f1 = f1(s.counts);
    return s;
  }
  for (const auto& c : per_pair) {
    s.iou += iou(c);
    s.f1 += f1(c);
  }
  s.iou /= static_cast<double>(per_pair.size());
  s.f1 /= static_cast<double>(per_pair.size());
  return s;
}

}  // namespace selfpair
