#include <algorithm>
#include <string>

#include "selfpair/image.hpp"

namespace selfpair {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::InfeasibleCrop: return "InfeasibleCrop";
    case ErrorCode::NoInstances: return "NoInstances";
    case ErrorCode::PlanOutOfBounds: return "PlanOutOfBounds";
    case ErrorCode::SourceUnusable: return "SourceUnusable";
    case ErrorCode::MissingMask: return "MissingMask";
    case ErrorCode::UndecodableFile: return "UndecodableFile";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::LabelCheckFailed: return "LabelCheckFailed";
  }
  return "Unknown";
}

long long intersection_area(const Rect& a, const Rect& b) {
  const long long h = std::min(a.row + a.height, b.row + b.height) - std::max(a.row, b.row);
  const long long w = std::min(a.col + a.width, b.col + b.width) - std::max(a.col, b.col);
  return (h > 0 && w > 0) ? h * w : 0;
}

void require_same_dims(int w1, int h1, int w2, int h2, const char* what) {
  if (w1 != w2 || h1 != h2) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(w1) + "x" + std::to_string(h1) +
                    " vs " + std::to_string(w2) + "x" + std::to_string(h2));
  }
}

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::EmptyImage,
                "grid must be at least 1x1, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

void check_rect(const Rect& r, int width, int height) {
  if (r.height < 1 || r.width < 1 || r.row < 0 || r.col < 0 || r.row + r.height > height ||
      r.col + r.width > width) {
    throw Error(ErrorCode::InvalidArgument, "crop rectangle leaves the grid");
  }
}

}  // namespace

// ---- RasterImage ----------------------------------------------------------

RasterImage::RasterImage(int width, int height, int channels)
    : RasterImage(width, height, channels,
                  std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                            std::max(height, 0) * std::max(channels, 0))) {}

RasterImage::RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height);
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::InvalidArgument,
                "channel count must be 1 or 3, got " + std::to_string(channels));
  }
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error(ErrorCode::InvalidArgument, "pixel buffer length does not match dimensions");
  }
}

RasterImage RasterImage::filled(int width, int height, int channels, std::uint8_t value) {
  check_dims(width, height);
  return RasterImage(width, height, channels,
                     std::vector<std::uint8_t>(
                         static_cast<std::size_t>(width) * height * channels, value));
}

RasterImage RasterImage::crop(const Rect& r) const {
  check_rect(r, width_, height_);
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(r.area()) * channels_);
  const std::size_t row_bytes = static_cast<std::size_t>(r.width) * channels_;
  for (int y = r.row; y < r.row + r.height; ++y) {
    const auto begin = data_.begin() +
                       static_cast<std::ptrdiff_t>((static_cast<std::size_t>(y) * width_ + r.col) *
                                                   channels_);
    out.insert(out.end(), begin, begin + static_cast<std::ptrdiff_t>(row_bytes));
  }
  return RasterImage(r.width, r.height, channels_, std::move(out));
}

// ---- BinaryGrid -----------------------------------------------------------

template <class Tag>
BinaryGrid<Tag>::BinaryGrid(int width, int height)
    : BinaryGrid(width, height,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                           std::max(height, 0))) {}

template <class Tag>
BinaryGrid<Tag>::BinaryGrid(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::InvalidArgument, "mask buffer length does not match dimensions");
  }
  if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(ErrorCode::InvalidArgument, "mask values must be 0 or 1");
  }
}

template <class Tag>
BinaryGrid<Tag> BinaryGrid<Tag>::filled(int width, int height, std::uint8_t value) {
  check_dims(width, height);
  return BinaryGrid(width, height,
                    std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, value));
}

template <class Tag>
std::size_t BinaryGrid<Tag>::count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

template <class Tag>
BinaryGrid<Tag> BinaryGrid<Tag>::crop(const Rect& r) const {
  check_rect(r, width_, height_);
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(r.area()));
  for (int y = r.row; y < r.row + r.height; ++y) {
    const auto begin =
        data_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(y) * width_ + r.col);
    out.insert(out.end(), begin, begin + r.width);
  }
  return BinaryGrid(r.width, r.height, std::move(out));
}

template class BinaryGrid<SemanticTag>;
template class BinaryGrid<HoleTag>;

// ---- Instances ------------------------------------------------------------

Rect Instance::bounding_box() const {
  if (pixels.empty()) return {};
  int r0 = pixels.front().row, r1 = r0, c0 = pixels.front().col, c1 = c0;
  for (const Point& p : pixels) {
    r0 = std::min(r0, p.row);
    r1 = std::max(r1, p.row);
    c0 = std::min(c0, p.col);
    c1 = std::max(c1, p.col);
  }
  return {r0, c0, r1 - r0 + 1, c1 - c0 + 1};
}

const Instance* InstanceSet::find(int id) const {
  for (const Instance& inst : instances) {
    if (inst.id == id) return &inst;
  }
  return nullptr;
}

InstanceSet InstanceSet::clip(const Rect& r) const {
  InstanceSet out;
  for (const Instance& inst : instances) {
    Instance clipped{inst.id, {}};
    for (const Point& p : inst.pixels) {
      if (r.contains(p)) clipped.pixels.push_back({p.row - r.row, p.col - r.col});
    }
    if (!clipped.pixels.empty()) out.instances.push_back(std::move(clipped));
  }
  return out;
}

SemanticMask union_mask(int width, int height, std::span<const Instance> instances) {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 0);
  for (const Instance& inst : instances) {
    for (const Point& p : inst.pixels) {
      if (p.row < 0 || p.row >= height || p.col < 0 || p.col >= width) {
        throw Error(ErrorCode::InvalidArgument, "instance pixel outside the mask");
      }
      cells[static_cast<std::size_t>(p.row) * width + p.col] = 1;
    }
  }
  return SemanticMask(width, height, std::move(cells));
}

}  // namespace selfpair
