#pragma once

// Pixel-grid value types shared by every stage of the synthesis pipeline.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "selfpair/error.hpp"

namespace selfpair {

struct Point {
  int row = 0;
  int col = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle; `row`/`col` is the top-left corner.
struct Rect {
  int row = 0;
  int col = 0;
  int height = 0;
  int width = 0;

  long long area() const { return static_cast<long long>(height) * width; }
  bool contains(Point p) const {
    return p.row >= row && p.row < row + height && p.col >= col && p.col < col + width;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Area of the intersection of two rectangles (0 when they only touch).
long long intersection_area(const Rect& a, const Rect& b);

/// H x W x C grid of 8-bit samples, row-major and channel-interleaved.
class RasterImage {
 public:
  RasterImage(int width, int height, int channels);
  RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data);

  static RasterImage filled(int width, int height, int channels, std::uint8_t value);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  std::span<const std::uint8_t> data() const { return data_; }
  std::uint8_t at(int row, int col, int channel = 0) const {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * channels_ + channel];
  }

  /// Copies out a sub-rectangle; throws InvalidArgument when it leaves the grid.
  RasterImage crop(const Rect& r) const;

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<std::uint8_t> data_;
};

/// H x W grid whose cells are strictly 0 or 1. The tag keeps semantic labels
/// and inpainting holes from being mixed up at call sites.
template <class Tag>
class BinaryGrid {
 public:
  BinaryGrid(int width, int height);
  BinaryGrid(int width, int height, std::vector<std::uint8_t> data);

  static BinaryGrid filled(int width, int height, std::uint8_t value);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  std::span<const std::uint8_t> data() const { return data_; }
  std::uint8_t at(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  bool at(Point p) const { return at(p.row, p.col) != 0; }

  std::size_t count() const;
  BinaryGrid crop(const Rect& r) const;

  friend bool operator==(const BinaryGrid&, const BinaryGrid&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

struct SemanticTag;
struct HoleTag;
using SemanticMask = BinaryGrid<SemanticTag>;
/// 1 marks an unknown pixel to be filled, 0 a known one.
using HoleMask = BinaryGrid<HoleTag>;

extern template class BinaryGrid<SemanticTag>;
extern template class BinaryGrid<HoleTag>;

struct Instance {
  int id = 0;
  std::vector<Point> pixels;  // raster order

  Rect bounding_box() const;
};

/// Objects of a label raster; pixel sets are pairwise disjoint.
struct InstanceSet {
  std::vector<Instance> instances;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }
  const Instance* find(int id) const;

  /// Clips every instance to `r` and translates it into r's frame. Instances
  /// left without pixels are dropped; ids are kept.
  InstanceSet clip(const Rect& r) const;
};

/// Rasterizes the union of the given instances.
SemanticMask union_mask(int width, int height, std::span<const Instance> instances);

void require_same_dims(int w1, int h1, int w2, int h2, const char* what);

template <class A, class B>
void require_same_dims(const A& a, const B& b, const char* what) {
  require_same_dims(a.width(), a.height(), b.width(), b.height(), what);
}

}  // namespace selfpair
