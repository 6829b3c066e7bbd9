#include "selfpair/dataset_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bitset>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>

#include "selfpair/components.hpp"
#include "selfpair/png_codec.hpp"

namespace selfpair {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(MaskKind kind) noexcept {
  return kind == MaskKind::binary ? "binary" : "instance_id";
}

std::string SourceEntry::id() const {
  if (!tile) return stem;
  return stem + "@r" + std::to_string(tile->row) + "c" + std::to_string(tile->col);
}

MaskKind detect_mask_kind(const fs::path& mask) {
  PngReader reader(mask, PngMode::label);
  std::vector<std::uint16_t> row(static_cast<std::size_t>(reader.width()));
  auto seen = std::make_unique<std::bitset<65536>>();
  for (int r = 0; r < reader.height(); ++r) {
    reader.read_row(row);
    for (const auto v : row) seen->set(v);
  }
  (*seen)[0] = (*seen)[1] = (*seen)[255] = false;
  return seen->none() ? MaskKind::binary : MaskKind::instance_id;
}

std::vector<SourceEntry> ingest(const fs::path& root, int tile) {
  if (tile < 0) throw Error(ErrorCode::InvalidArgument, "tile size must be >= 0");
  const fs::path images = root / "images";
  const fs::path masks = root / "masks";
  std::vector<std::string> stems;
  if (fs::is_directory(images)) {
    for (const auto& e : fs::directory_iterator(images)) {
      if (e.is_regular_file() && e.path().extension() == ".png") {
        stems.push_back(e.path().stem().string());
      }
    }
  }
  std::sort(stems.begin(), stems.end());

  std::vector<SourceEntry> out;
  for (const auto& stem : stems) {
    SourceEntry entry{stem, fs::absolute(images / (stem + ".png")),
                      fs::absolute(masks / (stem + ".png")), MaskKind::binary, std::nullopt};
    if (!fs::is_regular_file(entry.mask)) throw Error(ErrorCode::MissingMask, stem);

    PngSize isize, msize;
    try {
      isize = read_png_size(entry.image);
      PngReader probe(entry.mask, PngMode::label);
      msize = {probe.width(), probe.height()};
      entry.kind = detect_mask_kind(entry.mask);
    } catch (const Error& e) {
      throw Error(ErrorCode::UndecodableFile, stem + " (" + e.what() + ")");
    }
    if (isize.width != msize.width || isize.height != msize.height) {
      throw Error(ErrorCode::DimensionMismatch, stem);
    }

    if (tile == 0 || isize.width < tile || isize.height < tile) {
      out.push_back(std::move(entry));
      continue;
    }
    for (int r = 0; r + tile <= isize.height; r += tile) {
      for (int c = 0; c + tile <= isize.width; c += tile) {
        SourceEntry t = entry;
        t.tile = Rect{r, c, tile, tile};
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

Source load_source(const SourceEntry& entry) {
  const Rect region = entry.tile.value_or(Rect{});
  RasterImage image = read_image(entry.image, region);
  const LabelRaster raster = read_label(entry.mask, region);
  require_same_dims(image.width(), image.height(), raster.width, raster.height, entry.stem.c_str());
  std::vector<std::uint8_t> cells(raster.values.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = raster.values[i] != 0 ? 1 : 0;
  SemanticMask label(raster.width, raster.height, std::move(cells));
  if (entry.kind == MaskKind::binary) return make_source(entry.id(), std::move(image), std::move(label));
  InstanceSet instances = instances_from_ids(raster.width, raster.height, raster.values);
  return Source{entry.id(), std::move(image), std::move(label), std::move(instances)};
}

std::string sample_id(std::uint64_t sample_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08llu", static_cast<unsigned long long>(sample_index));
  return buf;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoFailure, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

// ---- JSON -----------------------------------------------------------------

namespace {

json to_json(Point p) { return json::array({p.row, p.col}); }
json to_json(const Rect& r) { return json::array({r.row, r.col, r.height, r.width}); }
Rect rect_from(const json& j) {
  return Rect{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(), j.at(3).get<int>()};
}

json blend_to_json(const BlendSpec& b) {
  return json{{"mode", to_string(b.mode)}, {"beta", b.beta}, {"sigma", b.sigma}};
}

BlendSpec blend_from_json(const json& j) {
  BlendSpec b;
  b.mode = parse_blend_mode(j.at("mode").get<std::string>());
  b.beta = j.at("beta").get<double>();
  b.sigma = j.at("sigma").get<double>();
  return b;
}

}  // namespace

json config_to_json(const PipelineConfig& cfg) {
  json strategies = json::array();
  for (Strategy s : cfg.strategies) strategies.push_back(to_string(s));
  return json{{"crop_size", cfg.crop_size},
              {"strategies", strategies},
              {"strategy_weights", cfg.effective_weights()},
              {"blend", blend_to_json(cfg.blend)},
              {"erase_fraction", cfg.erase_fraction},
              {"dilation", cfg.dilation},
              {"telea_radius", cfg.telea_radius},
              {"max_instances", cfg.max_instances},
              {"max_attempts", cfg.max_attempts},
              {"global_seed", cfg.global_seed},
              {"samples_per_source", cfg.samples_per_source},
              {"swap_inpaint_order", cfg.swap_inpaint_order},
              {"normalize_size", cfg.normalize_size}};
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig cfg;
  cfg.crop_size = j.at("crop_size").get<int>();
  cfg.strategies.clear();
  for (const auto& s : j.at("strategies")) cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
  cfg.strategy_weights = j.at("strategy_weights").get<std::vector<double>>();
  cfg.blend = blend_from_json(j.at("blend"));
  cfg.erase_fraction = j.at("erase_fraction").get<double>();
  cfg.dilation = j.at("dilation").get<int>();
  cfg.telea_radius = j.at("telea_radius").get<int>();
  cfg.max_instances = j.at("max_instances").get<std::size_t>();
  cfg.max_attempts = j.at("max_attempts").get<int>();
  cfg.global_seed = j.at("global_seed").get<std::uint64_t>();
  cfg.samples_per_source = j.at("samples_per_source").get<std::size_t>();
  cfg.swap_inpaint_order = j.at("swap_inpaint_order").get<bool>();
  cfg.normalize_size = j.at("normalize_size").get<bool>();
  cfg.validate();
  return cfg;
}

EncodedSample encode_sample(const ChangeSample& sample) {
  return EncodedSample{encode_png(sample.pre), encode_png(sample.post), encode_png(sample.change)};
}

json make_record(const ChangeSample& sample, const SourceEntry& entry, const PipelineConfig& cfg,
                 const EncodedSample& encoded) {
  const Provenance& p = sample.provenance;
  const std::string id = sample_id(p.sample_index);

  json params = json::object();
  if (p.crop_pre_origin) params["crop_pre_origin"] = to_json(*p.crop_pre_origin);
  if (p.crop_post_origin) params["crop_post_origin"] = to_json(*p.crop_post_origin);
  if (p.rotation) params["rotation_quarter_turns"] = *p.rotation;
  if (p.strategy == Strategy::inpaint) {
    params["erased_ids"] = p.erased_ids;
    params["swapped"] = p.swapped;
    params["dilation"] = cfg.dilation;
    params["telea_radius"] = cfg.telea_radius;
  }
  if (p.strategy == Strategy::copy_paste) {
    json pasted = json::array();
    for (const auto& pi : p.pasted) {
      pasted.push_back({{"id", pi.instance_id},
                        {"source_bbox", to_json(pi.source_bbox)},
                        {"offset", to_json(pi.target_offset)}});
    }
    params["pasted"] = pasted;
    params["dropped_ids"] = p.dropped_ids;
  }
  if (p.blend) params["blend"] = blend_to_json(*p.blend);
  if (p.window) params["window"] = to_json(*p.window);

  json source{{"image", entry.image.string()},
              {"mask", entry.mask.string()},
              {"mask_kind", to_string(entry.kind)},
              {"tile", entry.tile ? to_json(*entry.tile) : json(nullptr)}};

  return json{{"sample_id", id},
              {"source_id", p.source_id},
              {"source", source},
              {"strategy", to_string(p.strategy)},
              {"requested_strategy", to_string(p.requested)},
              {"fallbacks", p.fallbacks},
              {"seed_path", {{"global_seed", p.global_seed}, {"sample_index", p.sample_index}}},
              {"params", params},
              {"config", config_to_json(cfg)},
              {"files",
               {{"pre", "t0/" + id + ".png"},
                {"post", "t1/" + id + ".png"},
                {"change", "change/" + id + ".png"}}},
              {"sha256",
               {{"pre", sha256_hex(encoded.pre)},
                {"post", sha256_hex(encoded.post)},
                {"change", sha256_hex(encoded.change)}}}};
}

// ---- writer ---------------------------------------------------------------

DatasetWriter::DatasetWriter(fs::path out) : root_(std::move(out)) {
  std::error_code ec;
  for (const char* sub : {"t0", "t1", "change"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (root_ / sub).string());
  }
  std::ofstream truncate(root_ / "manifest.jsonl", std::ios::trunc);
  if (!truncate) throw Error(ErrorCode::IoFailure, "cannot create manifest.jsonl");
}

json DatasetWriter::write_sample(const ChangeSample& sample, const SourceEntry& entry,
                                 const PipelineConfig& cfg) {
  const EncodedSample encoded = encode_sample(sample);
  json record = make_record(sample, entry, cfg, encoded);
  const auto& files = record.at("files");
  write_file(root_ / files.at("pre").get<std::string>(), encoded.pre);
  write_file(root_ / files.at("post").get<std::string>(), encoded.post);
  write_file(root_ / files.at("change").get<std::string>(), encoded.change);

  const std::string line = record.dump() + "\n";
  std::lock_guard lock(manifest_mu_);
  std::ofstream manifest(root_ / "manifest.jsonl", std::ios::app | std::ios::binary);
  manifest << line;
  if (!manifest) throw Error(ErrorCode::IoFailure, "manifest append failed");
  return record;
}

std::vector<json> read_manifest(const fs::path& out) {
  std::ifstream in(out / "manifest.jsonl");
  if (!in) throw Error(ErrorCode::IoFailure, "no manifest.jsonl in " + out.string());
  std::vector<json> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::UndecodableFile,
                  "manifest.jsonl line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

// ---- validation -----------------------------------------------------------

std::vector<ValidationFailure> validate_output(const fs::path& out) {
  std::vector<ValidationFailure> failures;
  std::map<std::string, Source> cache;  // keyed by image|mask|tile

  for (const json& rec : read_manifest(out)) {
    const std::string id = rec.value("sample_id", std::string("?"));
    try {
      const auto& files = rec.at("files");
      const auto& sums = rec.at("sha256");
      bool on_disk_ok = true;
      for (const char* key : {"pre", "post", "change"}) {
        const fs::path f = out / files.at(key).get<std::string>();
        if (!fs::is_regular_file(f)) {
          failures.push_back({id, std::string(key) + " file missing: " + f.string()});
          on_disk_ok = false;
          continue;
        }
        if (sha256_hex(read_file(f)) != sums.at(key).get<std::string>()) {
          failures.push_back({id, std::string(key) + " checksum mismatch: " + f.string()});
          on_disk_ok = false;
        }
      }
      if (!on_disk_ok) continue;

      const auto& src = rec.at("source");
      SourceEntry entry;
      entry.stem = rec.at("source_id").get<std::string>();
      entry.image = src.at("image").get<std::string>();
      entry.mask = src.at("mask").get<std::string>();
      entry.kind = src.at("mask_kind").get<std::string>() == "binary" ? MaskKind::binary
                                                                       : MaskKind::instance_id;
      if (!src.at("tile").is_null()) {
        entry.tile = rect_from(src.at("tile"));
        entry.stem = entry.stem.substr(0, entry.stem.rfind('@'));
      }
      const std::string key = src.dump();
      auto it = cache.find(key);
      if (it == cache.end()) {
        if (cache.size() > 8) cache.clear();
        it = cache.emplace(key, load_source(entry)).first;
      }

      const PipelineConfig cfg = config_from_json(rec.at("config"));
      const auto index = rec.at("seed_path").at("sample_index").get<std::uint64_t>();
      const EncodedSample fresh = encode_sample(synthesize_sample(it->second, cfg, index));
      const std::pair<const char*, const std::vector<std::uint8_t>*> parts[] = {
          {"pre", &fresh.pre}, {"post", &fresh.post}, {"change", &fresh.change}};
      for (const auto& [part, bytes] : parts) {
        if (sha256_hex(*bytes) != sums.at(part).get<std::string>()) {
          failures.push_back({id, std::string("re-derived ") + part + " differs from record"});
        }
      }
    } catch (const std::exception& e) {
      failures.push_back({id, e.what()});
    }
  }
  return failures;
}

}  // namespace selfpair
