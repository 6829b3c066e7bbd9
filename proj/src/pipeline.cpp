#include "selfpair/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "selfpair/components.hpp"
#include "selfpair/geometry.hpp"
#include "selfpair/inpaint.hpp"
#include "selfpair/labelgen.hpp"

namespace selfpair {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::crop: return "crop";
    case Strategy::inpaint: return "inpaint";
    case Strategy::copy_paste: return "copy_paste";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "crop") return Strategy::crop;
  if (text == "inpaint") return Strategy::inpaint;
  if (text == "copy_paste" || text == "copy-paste" || text == "copypaste") {
    return Strategy::copy_paste;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (crop_size < 1) fail("crop_size must be >= 1");
  if (strategies.empty()) fail("at least one strategy must be enabled");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    for (std::size_t j = i + 1; j < strategies.size(); ++j) {
      if (strategies[i] == strategies[j]) fail("strategy listed twice");
    }
  }
  if (!strategy_weights.empty()) {
    if (strategy_weights.size() != strategies.size()) fail("one weight per enabled strategy");
    double sum = 0.0;
    for (double w : strategy_weights) {
      if (!(w >= 0.0)) fail("strategy weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) fail("strategy weights must sum to 1");
  }
  blend.validate();
  if (!(erase_fraction > 0.0 && erase_fraction <= 1.0)) fail("erase_fraction must be in (0, 1]");
  if (dilation < 0) fail("dilation must be >= 0");
  if (telea_radius < 1) fail("telea radius must be >= 1");
  if (max_instances < 1) fail("max_instances must be >= 1");
  if (max_attempts < 1) fail("max_attempts must be >= 1");
  if (samples_per_source < 1) fail("samples_per_source must be >= 1");
}

std::vector<double> PipelineConfig::effective_weights() const {
  if (!strategy_weights.empty()) return strategy_weights;
  return std::vector<double>(strategies.size(), 1.0 / static_cast<double>(strategies.size()));
}

Source make_source(std::string id, RasterImage image, SemanticMask label) {
  require_same_dims(image, label, "make_source");
  InstanceSet instances = connected_components(label);
  return Source{std::move(id), std::move(image), std::move(label), std::move(instances)};
}

namespace {

// Stream layout under derive_rng(seed, index): child 0 picks the strategy,
// child 1 + k drives strategy k, so a fallback never shifts another stream.
SeededRng strategy_stream(const PipelineConfig& cfg, std::uint64_t index) {
  return derive_rng(cfg.global_seed, index).child(0);
}

SeededRng work_stream(const PipelineConfig& cfg, std::uint64_t index, Strategy s) {
  return derive_rng(cfg.global_seed, index).child(1 + static_cast<std::uint64_t>(s));
}

struct Outcome {
  RasterImage pre;
  RasterImage post;
  SemanticMask change;
  SemanticMask pre_label;
  SemanticMask post_label;
};

// Thrown internally when a copy-paste plan ends up empty.
struct EmptyPlan {};

// Crop window of crop_size centred on the change (or the image centre).
std::optional<Rect> normalization_window(const SemanticMask& change, int size) {
  const int w = change.width();
  const int h = change.height();
  if (w < size || h < size || (w == size && h == size)) return std::nullopt;
  double cr = (h - 1) / 2.0, cc = (w - 1) / 2.0;
  int r0 = h, r1 = -1, c0 = w, c1 = -1;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!change.at(r, c)) continue;
      r0 = std::min(r0, r);
      r1 = std::max(r1, r);
      c0 = std::min(c0, c);
      c1 = std::max(c1, c);
    }
  }
  if (r1 >= 0) {
    cr = (r0 + r1) / 2.0;
    cc = (c0 + c1) / 2.0;
  }
  const int top = std::clamp(static_cast<int>(std::floor(cr - (size - 1) / 2.0)), 0, h - size);
  const int left = std::clamp(static_cast<int>(std::floor(cc - (size - 1) / 2.0)), 0, w - size);
  return Rect{top, left, size, size};
}

Outcome run_crop(const Source& src, const PipelineConfig& cfg, SeededRng& rng, Provenance& prov) {
  CropPair pair = crop_pair_strategy(src.image, src.label, cfg.crop_size, rng);
  prov.crop_pre_origin = pair.pre.origin;
  prov.crop_post_origin = pair.post.origin;
  prov.rotation = pair.rotation.quarter_turns;
  SemanticMask change = xor_change(pair.pre.label, pair.post.label);
  return Outcome{std::move(pair.pre.image), std::move(pair.post.image), std::move(change),
                 std::move(pair.pre.label), std::move(pair.post.label)};
}

Outcome run_inpaint(const Source& src, const PipelineConfig& cfg, SeededRng& rng,
                    Provenance& prov) {
  EraseOptions opts;
  opts.erase_fraction = cfg.erase_fraction;
  opts.dilation = cfg.dilation;
  opts.radius = cfg.telea_radius;
  opts.swap_order = cfg.swap_inpaint_order;
  EraseResult r = erase_instances_strategy(src.image, src.label, src.instances, rng, opts);
  prov.erased_ids = r.erased_ids;
  prov.swapped = cfg.swap_inpaint_order;
  Outcome out{std::move(r.pre), std::move(r.post), std::move(r.change), std::move(r.pre_label),
              std::move(r.post_label)};
  if (cfg.normalize_size) {
    if (auto win = normalization_window(out.change, cfg.crop_size)) {
      prov.window = win;
      out = Outcome{out.pre.crop(*win), out.post.crop(*win), out.change.crop(*win),
                    out.pre_label.crop(*win), out.post_label.crop(*win)};
    }
  }
  return out;
}

Outcome run_copy_paste(const Source& src, const PipelineConfig& cfg, SeededRng& rng,
                       Provenance& prov) {
  CropPair pair = crop_pair_strategy(src.image, src.label, cfg.crop_size, rng);
  const InstanceSet pre_instances =
      src.instances.clip({pair.pre.origin.row, pair.pre.origin.col, cfg.crop_size, cfg.crop_size});
  CopyPasteResult r = copy_paste_strategy(pair.pre, pair.post, pre_instances, cfg.blend, rng,
                                          cfg.max_instances, cfg.max_attempts);
  if (r.plan.empty()) throw EmptyPlan{};
  prov.crop_pre_origin = pair.pre.origin;
  prov.crop_post_origin = pair.post.origin;
  prov.rotation = pair.rotation.quarter_turns;
  for (const Placement& pl : r.plan.placements) {
    prov.pasted.push_back({pl.instance_id, pl.source_bbox, pl.target_offset});
  }
  prov.dropped_ids = r.plan.dropped_ids;
  prov.blend = cfg.blend;
  return Outcome{std::move(r.pre), std::move(r.post), std::move(r.change), std::move(r.pre_label),
                 std::move(r.post_label)};
}

bool should_self_check(std::uint64_t sample_index) {
#ifdef NDEBUG
  return sample_index % 100 == 0;
#else
  (void)sample_index;
  return true;
#endif
}

}  // namespace

Strategy draw_strategy(const PipelineConfig& cfg, std::uint64_t sample_index) {
  SeededRng rng = strategy_stream(cfg, sample_index);
  const auto weights = cfg.effective_weights();
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc && weights[i] > 0.0) return cfg.strategies[i];
  }
  // u landed on the rounding sliver above the last cumulative sum.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return cfg.strategies[i];
  }
  return cfg.strategies.front();
}

void verify_change_label(const ChangeSample& sample) {
  const Provenance& p = sample.provenance;
  require_same_dims(sample.pre, sample.post, "sample pre/post");
  require_same_dims(sample.pre, sample.change, "sample pre/change");
  if (!(xor_change(p.pre_label, p.post_label) == sample.change)) {
    throw Error(ErrorCode::LabelCheckFailed,
                "change label of sample " + std::to_string(p.sample_index) +
                    " is not the xor of its pre/post labels");
  }
}

ChangeSample synthesize_sample(const Source& source, const PipelineConfig& cfg,
                               std::uint64_t sample_index) {
  cfg.validate();
  require_same_dims(source.image, source.label, "synthesize_sample");

  const Strategy requested = draw_strategy(cfg, sample_index);
  std::vector<Strategy> order{requested};
  for (Strategy s : kAllStrategies) {
    if (s != requested && std::find(cfg.strategies.begin(), cfg.strategies.end(), s) !=
                              cfg.strategies.end()) {
      order.push_back(s);
    }
  }

  std::vector<std::string> fallbacks;
  for (Strategy s : order) {
    // Scratch provenance for this attempt; labels are filled in on success.
    Provenance prov(source.label, source.label);
    SeededRng rng = work_stream(cfg, sample_index, s);
    std::optional<Outcome> out;
    try {
      switch (s) {
        case Strategy::crop: out = run_crop(source, cfg, rng, prov); break;
        case Strategy::inpaint: out = run_inpaint(source, cfg, rng, prov); break;
        case Strategy::copy_paste: out = run_copy_paste(source, cfg, rng, prov); break;
      }
    } catch (const EmptyPlan&) {
      fallbacks.push_back(std::string(to_string(s)) + ": no instance could be placed");
      continue;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InfeasibleCrop && e.code() != ErrorCode::NoInstances) throw;
      fallbacks.push_back(std::string(to_string(s)) + ": " + e.what());
      continue;
    }

    prov.pre_label = std::move(out->pre_label);
    prov.post_label = std::move(out->post_label);
    prov.source_id = source.id;
    prov.requested = requested;
    prov.strategy = s;
    prov.fallbacks = std::move(fallbacks);
    prov.global_seed = cfg.global_seed;
    prov.sample_index = sample_index;
    ChangeSample sample{std::move(out->pre), std::move(out->post), std::move(out->change),
                        std::move(prov)};
    if (should_self_check(sample_index)) verify_change_label(sample);
    return sample;
  }

  std::string why;
  for (const auto& f : fallbacks) why += (why.empty() ? "" : "; ") + f;
  throw Error(ErrorCode::SourceUnusable, "source '" + source.id + "': " + why);
}

DatasetReport synthesize_dataset(std::size_t source_count, const SourceLoader& load,
                                 const PipelineConfig& cfg, unsigned jobs, const SampleSink& sink) {
  cfg.validate();
  if (source_count == 0) throw Error(ErrorCode::InvalidArgument, "no sources to synthesize from");
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::min<std::size_t>(source_count, 256)));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> emitted{0};
  std::atomic<bool> abort{false};
  std::mutex mu;
  std::map<std::size_t, SourceFailure> failures;
  std::exception_ptr fatal;

  auto record_failure = [&](std::size_t i, const std::string& id, const std::string& msg) {
    std::lock_guard lock(mu);
    auto& f = failures[i];
    if (f.failed_samples == 0) {
      f.source_index = i;
      f.source_id = id;
      f.message = msg;
    }
    ++f.failed_samples;
  };

  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < source_count && !abort; i = next++) {
        std::optional<Source> src;
        try {
          src.emplace(load(i));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::IoFailure) throw;
          std::lock_guard lock(mu);
          failures[i] = SourceFailure{i, "#" + std::to_string(i), cfg.samples_per_source, e.what()};
          continue;
        }
        for (std::size_t j = 0; j < cfg.samples_per_source && !abort; ++j) {
          const std::uint64_t index = global_sample_index(i, j, cfg.samples_per_source);
          try {
            sink(synthesize_sample(*src, cfg, index));
            ++emitted;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::SourceUnusable) throw;
            record_failure(i, src->id, e.what());
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!fatal) fatal = std::current_exception();
      abort = true;
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  DatasetReport report;
  report.emitted = emitted;
  for (auto& [i, f] : failures) report.failures.push_back(std::move(f));
  return report;
}

std::vector<ChangeSample> synthesize_dataset(std::span<const Source> sources,
                                             const PipelineConfig& cfg, unsigned jobs,
                                             DatasetReport* report) {
  std::mutex mu;
  std::vector<ChangeSample> out;
  DatasetReport r = synthesize_dataset(
      sources.size(), [&](std::size_t i) { return sources[i]; }, cfg, jobs,
      [&](ChangeSample&& s) {
        std::lock_guard lock(mu);
        out.push_back(std::move(s));
      });
  std::sort(out.begin(), out.end(), [](const ChangeSample& a, const ChangeSample& b) {
    return a.provenance.sample_index < b.provenance.sample_index;
  });
  if (report != nullptr) *report = std::move(r);
  return out;
}

}  // namespace selfpair
