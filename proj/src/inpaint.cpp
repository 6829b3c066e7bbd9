#include "selfpair/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "selfpair/labelgen.hpp"
#include "selfpair/simd/kernels.hpp"

namespace selfpair {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upwind solution of |grad T| = 1 from the frozen 4-neighbours.
double solve_eikonal(const std::vector<double>& t, const std::vector<std::uint8_t>& frozen, int w,
                     int h, int r, int c) {
  auto value = [&](int rr, int cc) {
    if (rr < 0 || rr >= h || cc < 0 || cc >= w) return kInf;
    const std::size_t i = static_cast<std::size_t>(rr) * w + cc;
    return frozen[i] ? t[i] : kInf;
  };
  const double a = std::min(value(r, c - 1), value(r, c + 1));
  const double b = std::min(value(r - 1, c), value(r + 1, c));
  if (std::isinf(a) && std::isinf(b)) return kInf;
  const double d = a - b;
  if (std::isinf(a) || std::isinf(b) || std::abs(d) >= 1.0) return std::min(a, b) + 1.0;
  return 0.5 * (a + b + std::sqrt(2.0 - d * d));
}

}  // namespace

FillTrace fast_march(const HoleMask& hole) {
  const int w = hole.width();
  const int h = hole.height();
  const auto cells = hole.data();
  const std::size_t n = cells.size();

  FillTrace trace;
  trace.arrival.assign(n, kInf);
  std::vector<std::uint8_t> frozen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (cells[i] == 0) {
      trace.arrival[i] = 0.0;
      frozen[i] = 1;
    }
  }

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> band;
  auto relax = [&](int r, int c) {
    const std::size_t i = static_cast<std::size_t>(r) * w + c;
    if (frozen[i]) return;
    const double t = solve_eikonal(trace.arrival, frozen, w, h, r, c);
    if (t < trace.arrival[i]) {
      trace.arrival[i] = t;
      band.push({t, i});
    }
  };
  auto relax_neighbours = [&](int r, int c) {
    if (r > 0) relax(r - 1, c);
    if (r + 1 < h) relax(r + 1, c);
    if (c > 0) relax(r, c - 1);
    if (c + 1 < w) relax(r, c + 1);
  };

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (cells[static_cast<std::size_t>(r) * w + c] == 0) continue;
      const bool touches_known = (r > 0 && cells[(r - 1) * static_cast<std::size_t>(w) + c] == 0) ||
                                 (r + 1 < h && cells[(r + 1) * static_cast<std::size_t>(w) + c] == 0) ||
                                 (c > 0 && cells[r * static_cast<std::size_t>(w) + c - 1] == 0) ||
                                 (c + 1 < w && cells[r * static_cast<std::size_t>(w) + c + 1] == 0);
      if (touches_known) relax(r, c);
    }
  }

  while (!band.empty()) {
    const auto [t, i] = band.top();
    band.pop();
    if (frozen[i] || t > trace.arrival[i]) continue;  // stale entry
    frozen[i] = 1;
    trace.order.push_back(i);
    relax_neighbours(static_cast<int>(i / w), static_cast<int>(i % w));
  }
  return trace;
}

RasterImage telea_inpaint(const RasterImage& image, const HoleMask& hole, int radius,
                          FillTrace* trace_out) {
  require_same_dims(image, hole, "telea_inpaint");
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "inpaint radius must be >= 1");
  const std::size_t unknown = hole.count();
  if (unknown == 0) {
    if (trace_out != nullptr) *trace_out = fast_march(hole);
    return image;
  }
  if (unknown == hole.size()) {
    throw Error(ErrorCode::EmptyImage, "hole covers the whole image; nothing to propagate from");
  }

  const int w = image.width();
  const int h = image.height();
  const int ch = image.channels();
  FillTrace trace = fast_march(hole);
  const auto& t = trace.arrival;

  std::vector<double> values(image.data().begin(), image.data().end());
  std::vector<std::uint8_t> ready(hole.data().begin(), hole.data().end());
  for (auto& v : ready) v ^= 1u;

  auto arrival = [&](int r, int c) { return t[static_cast<std::size_t>(r) * w + c]; };
  // Central differences of T, one-sided at the border.
  auto gradient = [&](int r, int c) {
    const int c0 = std::max(c - 1, 0), c1 = std::min(c + 1, w - 1);
    const int r0 = std::max(r - 1, 0), r1 = std::min(r + 1, h - 1);
    const double gx = c1 > c0 ? (arrival(r, c1) - arrival(r, c0)) / (c1 - c0) : 0.0;
    const double gy = r1 > r0 ? (arrival(r1, c) - arrival(r0, c)) / (r1 - r0) : 0.0;
    return std::pair{gy, gx};
  };

  const int r2 = radius * radius;
  std::vector<double> acc(static_cast<std::size_t>(ch));
  for (const std::size_t idx : trace.order) {
    const int pr = static_cast<int>(idx / w);
    const int pc = static_cast<int>(idx % w);
    const auto [gy, gx] = gradient(pr, pc);
    const double gnorm = std::hypot(gy, gx);
    const double tp = t[idx];

    std::fill(acc.begin(), acc.end(), 0.0);
    double wsum = 0.0;
    for (int qr = std::max(pr - radius, 0); qr <= std::min(pr + radius, h - 1); ++qr) {
      for (int qc = std::max(pc - radius, 0); qc <= std::min(pc + radius, w - 1); ++qc) {
        const int dy = pr - qr;
        const int dx = pc - qc;
        const int d2 = dy * dy + dx * dx;
        if (d2 == 0 || d2 > r2) continue;
        const std::size_t q = static_cast<std::size_t>(qr) * w + qc;
        if (!ready[q]) continue;
        const double dist = std::sqrt(static_cast<double>(d2));
        double dir = gnorm > 0.0 ? std::abs(dy * gy + dx * gx) / (dist * gnorm) : 1.0;
        if (dir == 0.0) dir = 1e-6;
        const double dst = 1.0 / d2;
        const double lev = 1.0 / (1.0 + std::abs(tp - t[q]));
        const double wt = dir * dst * lev;
        wsum += wt;
        for (int k = 0; k < ch; ++k) acc[k] += wt * values[q * ch + k];
      }
    }
    for (int k = 0; k < ch; ++k) values[idx * ch + k] = acc[k] / wsum;
    ready[idx] = 1;
  }

  std::vector<std::uint8_t> out(values.size());
  simd::kernels().quantize(values.data(), out.data(), out.size());
  if (trace_out != nullptr) *trace_out = std::move(trace);
  return RasterImage(w, h, ch, std::move(out));
}

SemanticMask dilate(const SemanticMask& mask, int pixels) {
  if (pixels < 0) throw Error(ErrorCode::InvalidArgument, "dilation must be >= 0");
  if (pixels == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  const auto src = mask.data();
  std::vector<std::uint8_t> horiz(src.size(), 0), out(src.size(), 0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      std::uint8_t v = 0;
      for (int k = std::max(c - pixels, 0); k <= std::min(c + pixels, w - 1) && !v; ++k) {
        v = src[static_cast<std::size_t>(r) * w + k];
      }
      horiz[static_cast<std::size_t>(r) * w + c] = v;
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      std::uint8_t v = 0;
      for (int k = std::max(r - pixels, 0); k <= std::min(r + pixels, h - 1) && !v; ++k) {
        v = horiz[static_cast<std::size_t>(k) * w + c];
      }
      out[static_cast<std::size_t>(r) * w + c] = v;
    }
  }
  return SemanticMask(w, h, std::move(out));
}

EraseResult erase_instances_strategy(const RasterImage& image, const SemanticMask& label,
                                     const InstanceSet& instances, SeededRng& rng,
                                     const EraseOptions& options) {
  require_same_dims(image, label, "erase_instances_strategy");
  if (instances.empty()) throw Error(ErrorCode::NoInstances, "label has no foreground objects");
  if (!(options.erase_fraction > 0.0 && options.erase_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "erase_fraction must be in (0, 1]");
  }
  const std::size_t n = instances.size();
  const auto k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(options.erase_fraction * static_cast<double>(n))), 1, n);

  std::vector<Instance> erased;
  std::vector<int> erased_ids;
  for (const std::size_t i : rng.sample_without_replacement(n, k)) {
    erased.push_back(instances.instances[i]);
    erased_ids.push_back(instances.instances[i].id);
  }
  std::sort(erased_ids.begin(), erased_ids.end());

  const SemanticMask erased_mask = union_mask(image.width(), image.height(), erased);
  const SemanticMask keep = mask_not(erased_mask);
  const SemanticMask kept_objects = mask_and(label, keep);
  const SemanticMask change = erase_change(label, keep);

  const SemanticMask grown = mask_and(dilate(erased_mask, options.dilation), mask_not(kept_objects));
  HoleMask hole(grown.width(), grown.height(),
                std::vector<std::uint8_t>(grown.data().begin(), grown.data().end()));
  RasterImage inpainted = telea_inpaint(image, hole, options.radius);

  if (options.swap_order) {
    return EraseResult{image,        std::move(inpainted), change,
                       label,        kept_objects,         std::move(erased_ids),
                       std::move(hole)};
  }
  return EraseResult{std::move(inpainted), image, change, kept_objects, label,
                     std::move(erased_ids), std::move(hole)};
}

}  // namespace selfpair
