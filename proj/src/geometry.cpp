#include "selfpair/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace selfpair {

Rotation::Rotation(int turns) : quarter_turns(turns) {
  if (turns < 0 || turns > 3) {
    throw Error(ErrorCode::InvalidArgument, "quarter_turns must be in [0, 3]");
  }
}

bool disjoint_crops_feasible(int width, int height, int size) {
  if (size < 1 || size > width || size > height) return false;
  return 2 * static_cast<long long>(size) <= width || 2 * static_cast<long long>(size) <= height;
}

namespace {

bool disjoint(Point a, Point b, int size) {
  return a.row + size <= b.row || b.row + size <= a.row || a.col + size <= b.col ||
         b.col + size <= a.col;
}

// Number of positions q in [0, span] with |q - p| < size.
long long overlapping_positions(int p, int span, int size) {
  const int lo = std::max(0, p - size + 1);
  const int hi = std::min(span, p + size - 1);
  return hi - lo + 1;
}

Patch cut(const RasterImage& image, const SemanticMask& label, Point origin, int size) {
  const Rect r{origin.row, origin.col, size, size};
  return Patch{image.crop(r), label.crop(r), origin};
}

}  // namespace

std::pair<Patch, Patch> sample_disjoint_crops(const RasterImage& image, const SemanticMask& label,
                                              int size, SeededRng& rng) {
  require_same_dims(image, label, "sample_disjoint_crops");
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "crop size must be >= 1");
  const int w = image.width();
  const int h = image.height();
  if (!disjoint_crops_feasible(w, h, size)) {
    throw Error(ErrorCode::InfeasibleCrop, "no two disjoint " + std::to_string(size) + "x" +
                                               std::to_string(size) + " crops fit in " +
                                               std::to_string(w) + "x" + std::to_string(h));
  }
  const int max_row = h - size;
  const int max_col = w - size;

  auto draw = [&] {
    const int r = static_cast<int>(rng.uniform_int(0, max_row));
    const int c = static_cast<int>(rng.uniform_int(0, max_col));
    return Point{r, c};
  };

  for (int attempt = 0; attempt < kMaxCropRejections; ++attempt) {
    const Point a = draw();
    const Point b = draw();
    if (disjoint(a, b, size)) {
      return {cut(image, label, a, size), cut(image, label, b, size)};
    }
  }

  // Deterministic fallback: first patch uniform over placements that admit a
  // disjoint partner, second uniform over that placement's partners.
  const long long total = static_cast<long long>(max_row + 1) * (max_col + 1);
  auto partners = [&](Point p) {
    return total - overlapping_positions(p.row, max_row, size) *
                       overlapping_positions(p.col, max_col, size);
  };
  std::vector<Point> firsts;
  for (int r = 0; r <= max_row; ++r) {
    for (int c = 0; c <= max_col; ++c) {
      if (partners({r, c}) > 0) firsts.push_back({r, c});
    }
  }
  if (firsts.empty()) {
    throw Error(ErrorCode::InfeasibleCrop, "no disjoint placement pair exists");
  }
  const Point a = firsts[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(firsts.size()) - 1))];
  long long pick = rng.uniform_int(0, partners(a) - 1);
  for (int r = 0; r <= max_row; ++r) {
    for (int c = 0; c <= max_col; ++c) {
      if (!disjoint(a, {r, c}, size)) continue;
      if (pick-- == 0) return {cut(image, label, a, size), cut(image, label, {r, c}, size)};
    }
  }
  throw Error(ErrorCode::InfeasibleCrop, "partner enumeration exhausted");
}

namespace {

// Source index of destination cell (r, c) for a clockwise rotation of an
// h x w grid; destination dims are (w x h) for odd turns.
template <class Fn>
void for_each_rotated(int w, int h, Rotation rot, Fn&& fn) {
  const int out_w = (rot.quarter_turns % 2) ? h : w;
  const int out_h = (rot.quarter_turns % 2) ? w : h;
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      int sr = r, sc = c;
      switch (rot.quarter_turns) {
        case 1: sr = h - 1 - c; sc = r; break;
        case 2: sr = h - 1 - r; sc = w - 1 - c; break;
        case 3: sr = c; sc = w - 1 - r; break;
        default: break;
      }
      fn(static_cast<std::size_t>(r) * out_w + c, static_cast<std::size_t>(sr) * w + sc);
    }
  }
}

}  // namespace

RasterImage rotate(const RasterImage& image, Rotation rot) {
  if (rot.quarter_turns == 0) return image;
  const int ch = image.channels();
  const auto src = image.data();
  std::vector<std::uint8_t> out(src.size());
  for_each_rotated(image.width(), image.height(), rot, [&](std::size_t dst, std::size_t s) {
    for (int k = 0; k < ch; ++k) out[dst * ch + k] = src[s * ch + k];
  });
  const bool odd = rot.quarter_turns % 2;
  return RasterImage(odd ? image.height() : image.width(), odd ? image.width() : image.height(),
                     ch, std::move(out));
}

SemanticMask rotate(const SemanticMask& mask, Rotation rot) {
  if (rot.quarter_turns == 0) return mask;
  const auto src = mask.data();
  std::vector<std::uint8_t> out(src.size());
  for_each_rotated(mask.width(), mask.height(), rot,
                   [&](std::size_t dst, std::size_t s) { out[dst] = src[s]; });
  const bool odd = rot.quarter_turns % 2;
  return SemanticMask(odd ? mask.height() : mask.width(), odd ? mask.width() : mask.height(),
                      std::move(out));
}

Patch rotate(const Patch& patch, Rotation rot) {
  return Patch{rotate(patch.image, rot), rotate(patch.label, rot), patch.origin};
}

CropPair crop_pair_strategy(const RasterImage& image, const SemanticMask& label, int size,
                            SeededRng& rng) {
  auto [first, second] = sample_disjoint_crops(image, label, size, rng);
  const Rotation rot(static_cast<int>(rng.uniform_int(0, 3)));
  return CropPair{std::move(first), rotate(second, rot), rot};
}

}  // namespace selfpair
