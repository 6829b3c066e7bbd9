#pragma once

// Random rasters, synthetic building scenes and scratch directories for tests.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "selfpair/dataset_io.hpp"
#include "selfpair/image.hpp"
#include "selfpair/png_codec.hpp"

namespace fixtures {

using selfpair::RasterImage;
using selfpair::SemanticMask;

inline RasterImage random_image(std::mt19937_64& gen, int w, int h, int channels) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * channels);
  for (auto& v : data) v = static_cast<std::uint8_t>(byte(gen));
  return RasterImage(w, h, channels, std::move(data));
}

inline SemanticMask random_mask(std::mt19937_64& gen, int w, int h, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h);
  for (auto& v : data) v = bit(gen) ? 1 : 0;
  return SemanticMask(w, h, std::move(data));
}

inline SemanticMask mask_from_rows(const std::vector<std::vector<int>>& rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  std::vector<std::uint8_t> data;
  for (const auto& r : rows) {
    for (int v : r) data.push_back(static_cast<std::uint8_t>(v));
  }
  return SemanticMask(w, h, std::move(data));
}

struct Scene {
  RasterImage image;
  SemanticMask label;
};

/// Textured ground with `buildings` bright, non-touching rectangular roofs.
inline Scene building_scene(std::uint64_t seed, int w, int h, int buildings, int channels = 3) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> noise(-12, 12);
  std::vector<std::uint8_t> img(static_cast<std::size_t>(w) * h * channels);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < channels; ++k) {
        const int base = 70 + (r * 3 + c * 2 + k * 17) % 40;
        img[(static_cast<std::size_t>(r) * w + c) * channels + k] =
            static_cast<std::uint8_t>(std::clamp(base + noise(gen), 0, 255));
      }
    }
  }
  std::vector<std::uint8_t> lab(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::uint8_t> blocked(lab.size(), 0);
  const int max_side = std::max(3, std::min(w, h) / 8);
  std::uniform_int_distribution<int> side(3, max_side);
  int placed = 0;
  for (int attempt = 0; attempt < buildings * 50 && placed < buildings; ++attempt) {
    const int bh = side(gen), bw = side(gen);
    if (bh + 2 > h || bw + 2 > w) continue;
    const int r0 = std::uniform_int_distribution<int>(1, h - bh - 1)(gen);
    const int c0 = std::uniform_int_distribution<int>(1, w - bw - 1)(gen);
    bool free = true;
    for (int r = r0 - 1; r <= r0 + bh && free; ++r) {
      for (int c = c0 - 1; c <= c0 + bw && free; ++c) free = !blocked[static_cast<std::size_t>(r) * w + c];
    }
    if (!free) continue;
    const int roof = std::uniform_int_distribution<int>(170, 240)(gen);
    for (int r = r0 - 1; r <= r0 + bh; ++r) {
      for (int c = c0 - 1; c <= c0 + bw; ++c) blocked[static_cast<std::size_t>(r) * w + c] = 1;
    }
    for (int r = r0; r < r0 + bh; ++r) {
      for (int c = c0; c < c0 + bw; ++c) {
        lab[static_cast<std::size_t>(r) * w + c] = 1;
        for (int k = 0; k < channels; ++k) {
          img[(static_cast<std::size_t>(r) * w + c) * channels + k] =
              static_cast<std::uint8_t>(std::clamp(roof - 10 * k + noise(gen) / 3, 0, 255));
        }
      }
    }
    ++placed;
  }
  return Scene{RasterImage(w, h, channels, std::move(img)), SemanticMask(w, h, std::move(lab))};
}

/// Removed (recursively) on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("selfpair-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// images/<stem>.png + masks/<stem>.png (mask stored 0/255).
inline void write_source(const std::filesystem::path& root, const std::string& stem,
                         const RasterImage& image, const SemanticMask& label) {
  std::filesystem::create_directories(root / "images");
  std::filesystem::create_directories(root / "masks");
  selfpair::write_file(root / "images" / (stem + ".png"), selfpair::encode_png(image));
  selfpair::write_file(root / "masks" / (stem + ".png"), selfpair::encode_png(label));
}

/// Scene dataset with `count` sources named s000, s001, ...
inline void write_scene_dataset(const std::filesystem::path& root, int count, int w, int h,
                                int buildings, std::uint64_t seed = 1) {
  for (int i = 0; i < count; ++i) {
    const Scene s = building_scene(seed * 1000 + static_cast<std::uint64_t>(i), w, h, buildings);
    char stem[16];
    std::snprintf(stem, sizeof stem, "s%03d", i);
    write_source(root, stem, s.image, s.label);
  }
}

}  // namespace fixtures
