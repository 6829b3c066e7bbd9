#pragma once

// Lossless PNG reading and writing on top of libpng.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "selfpair/image.hpp"

namespace selfpair {

enum class PngMode {
  image,  // 8-bit gray or RGB: palette expanded, alpha stripped, 16-bit reduced
  label,  // single channel raw values, 8 or 16 bit
};

/// Row-at-a-time decoder, so tiles and value scans of large rasters never
/// hold the full scene. Interlaced files are decoded whole on open.
class PngReader {
 public:
  PngReader(const std::filesystem::path& path, PngMode mode);
  ~PngReader();
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  int next_row() const { return next_row_; }

  /// Next row as samples (width * channels values). Label mode yields raw
  /// 8/16-bit values; image mode yields 0..255.
  void read_row(std::span<std::uint16_t> out);
  void skip_rows(int count);

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  int next_row_ = 0;
};

struct PngSize {
  int width = 0;
  int height = 0;
};

PngSize read_png_size(const std::filesystem::path& path);

/// Decodes `region` (whole image when empty) of an 8-bit gray/RGB image.
RasterImage read_image(const std::filesystem::path& path, const Rect& region = {});

struct LabelRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;
};

LabelRaster read_label(const std::filesystem::path& path, const Rect& region = {});

/// Mask stored as 0/255 (or 0/1); anything nonzero decodes to 1.
SemanticMask read_mask(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RasterImage& image);
/// Single channel, 0/255.
std::vector<std::uint8_t> encode_png(const SemanticMask& mask);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace selfpair
