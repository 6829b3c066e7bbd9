#pragma once

// On-disk layout:
//
//   <input>/images/<stem>.png   source image (8-bit gray or RGB)
//   <input>/masks/<stem>.png    building mask, binary (0/1/255) or instance ids
//
//   <output>/t0/<id>.png        pre-event image
//   <output>/t1/<id>.png        post-event image
//   <output>/change/<id>.png    change label, 0/255 single channel
//   <output>/manifest.jsonl     one ManifestRecord per line
//   <output>/report.json        sources that produced no sample

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "selfpair/pipeline.hpp"

namespace selfpair {

enum class MaskKind { binary, instance_id };

std::string_view to_string(MaskKind kind) noexcept;

struct SourceEntry {
  std::string stem;
  std::filesystem::path image;
  std::filesystem::path mask;
  MaskKind kind = MaskKind::binary;
  std::optional<Rect> tile;  // sub-rectangle of a pre-tiled large scene

  /// Stem, plus "@r<row>c<col>" for tiles.
  std::string id() const;
};

/// Scans root/images and root/masks, pairing files by stem in lexicographic
/// order. With tile > 0 every image is split into tile x tile pieces (images
/// smaller than the tile stay whole); no pixel data is kept in memory.
std::vector<SourceEntry> ingest(const std::filesystem::path& root, int tile = 0);

/// Binary when the mask's values are a subset of {0, 1, 255}.
MaskKind detect_mask_kind(const std::filesystem::path& mask);

Source load_source(const SourceEntry& entry);

std::string sample_id(std::uint64_t sample_index);
std::string sha256_hex(std::span<const std::uint8_t> bytes);

nlohmann::json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);

struct EncodedSample {
  std::vector<std::uint8_t> pre;
  std::vector<std::uint8_t> post;
  std::vector<std::uint8_t> change;
};

EncodedSample encode_sample(const ChangeSample& sample);

/// Manifest line for a sample: seed path, every strategy parameter, the
/// generating config, file paths and SHA-256 of each file.
nlohmann::json make_record(const ChangeSample& sample, const SourceEntry& entry,
                           const PipelineConfig& cfg, const EncodedSample& encoded);

/// Writes sample files and appends manifest lines; safe to call from many
/// threads (files are written by the caller's thread, the manifest append is
/// serialized).
class DatasetWriter {
 public:
  /// Creates the directory layout and truncates manifest.jsonl.
  explicit DatasetWriter(std::filesystem::path out);

  nlohmann::json write_sample(const ChangeSample& sample, const SourceEntry& entry,
                              const PipelineConfig& cfg);
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::mutex manifest_mu_;
};

std::vector<nlohmann::json> read_manifest(const std::filesystem::path& out);

struct ValidationFailure {
  std::string sample_id;
  std::string reason;
};

/// Checks every file against its recorded checksum, then re-derives each
/// sample from its record and compares checksums of the fresh encoding.
std::vector<ValidationFailure> validate_output(const std::filesystem::path& out);

}  // namespace selfpair
