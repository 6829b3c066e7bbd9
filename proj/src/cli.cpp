#include "selfpair/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "selfpair/dataset_io.hpp"
#include "selfpair/metrics.hpp"
#include "selfpair/png_codec.hpp"
#include "selfpair/simd/kernels.hpp"

namespace selfpair {

namespace fs = std::filesystem;

namespace {

struct SynthOptions {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t samples_per_source = 1;
  int crop_size = 256;
  std::vector<std::string> strategies{"crop", "inpaint", "copy_paste"};
  std::vector<double> weights;
  std::string blend = "fourier";
  double beta = 0.05;
  double sigma = 2.0;
  double erase_fraction = 0.5;
  int dilation = 2;
  int radius = 5;
  std::size_t max_instances = kDefaultMaxInstances;
  int max_attempts = kDefaultMaxAttempts;
  unsigned jobs = 0;
  bool swap_inpaint_order = false;
  bool no_normalize = false;
  int tile = 0;
  std::uint64_t index = 0;  // preview only
};

void add_synth_options(CLI::App& app, SynthOptions& o, bool preview) {
  app.add_option("--input", o.input, "Dataset root holding images/ and masks/")->required();
  app.add_option("--output", o.output, "Output directory")->required();
  app.add_option("--seed", o.seed, "Global seed");
  app.add_option("--samples-per-source", o.samples_per_source)->check(CLI::PositiveNumber);
  app.add_option("--crop-size", o.crop_size, "Tile edge in pixels")->check(CLI::PositiveNumber);
  app.add_option("--strategies", o.strategies, "Subset of crop,inpaint,copy_paste")
      ->delimiter(',');
  app.add_option("--weights", o.weights, "Probabilities, one per strategy, summing to 1")
      ->delimiter(',');
  app.add_option("--blend", o.blend, "Blend mode for copy-paste")
      ->check(CLI::IsMember({"none", "gaussian", "fourier"}));
  app.add_option("--beta", o.beta, "Low-frequency window size for fourier blending")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--sigma", o.sigma, "Gaussian feather sigma in pixels");
  app.add_option("--erase-fraction", o.erase_fraction, "Share of instances erased per sample");
  app.add_option("--dilation", o.dilation, "Hole dilation before inpainting")->check(CLI::NonNegativeNumber);
  app.add_option("--radius", o.radius, "Inpainting neighbourhood radius")->check(CLI::PositiveNumber);
  app.add_option("--max-instances", o.max_instances, "Instances pasted per sample")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-attempts", o.max_attempts, "Placement attempts per pasted instance")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", o.jobs, "Worker threads (default: $SELF_PAIR_JOBS or 1)");
  app.add_flag("--swap-inpaint-order", o.swap_inpaint_order,
               "Use the original image as t0 and the inpainted one as t1");
  app.add_flag("--no-normalize", o.no_normalize, "Keep inpainting samples at source size");
  app.add_option("--tile", o.tile, "Pre-tile sources into N x N pieces")->check(CLI::NonNegativeNumber);
  if (preview) app.add_option("--index", o.index, "Global sample index to render");
}

PipelineConfig to_config(const SynthOptions& o) {
  PipelineConfig cfg;
  cfg.crop_size = o.crop_size;
  cfg.strategies.clear();
  for (const auto& s : o.strategies) cfg.strategies.push_back(parse_strategy(s));
  cfg.strategy_weights = o.weights;
  cfg.blend.mode = parse_blend_mode(o.blend);
  cfg.blend.beta = o.beta;
  cfg.blend.sigma = o.sigma;
  cfg.erase_fraction = o.erase_fraction;
  cfg.dilation = o.dilation;
  cfg.telea_radius = o.radius;
  cfg.max_instances = o.max_instances;
  cfg.max_attempts = o.max_attempts;
  cfg.global_seed = o.seed;
  cfg.samples_per_source = o.samples_per_source;
  cfg.swap_inpaint_order = o.swap_inpaint_order;
  cfg.normalize_size = !o.no_normalize;
  cfg.validate();
  return cfg;
}

unsigned resolve_jobs(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SELF_PAIR_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

// Usage problems found after parsing (bad strategy names, weights...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PipelineConfig checked_config(const SynthOptions& o) {
  try {
    return to_config(o);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int cmd_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = checked_config(o);
  const auto entries = ingest(o.input, o.tile);
  if (entries.empty()) {
    err << "no sources found under " << o.input << "/images\n";
    return kExitDataError;
  }
  DatasetWriter writer(o.output);
  const DatasetReport report = synthesize_dataset(
      entries.size(), [&](std::size_t i) { return load_source(entries[i]); }, cfg,
      resolve_jobs(o.jobs), [&](ChangeSample&& s) {
        const std::size_t src = s.provenance.sample_index / cfg.samples_per_source;
        writer.write_sample(s, entries[src], cfg);
      });

  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) {
    const std::string id = f.source_index < entries.size() ? entries[f.source_index].id() : f.source_id;
    failures.push_back({{"source_id", id}, {"failed_samples", f.failed_samples}, {"reason", f.message}});
    err << "warning: source " << id << " unusable: " << f.message << "\n";
  }
  std::ofstream(fs::path(o.output) / "report.json")
      << nlohmann::json{{"emitted", report.emitted}, {"unusable_sources", failures}}.dump(2) << "\n";
  out << "wrote " << report.emitted << " samples from " << entries.size() << " sources to "
      << o.output << " (" << report.failures.size() << " unusable, kernels: "
      << simd::to_string(simd::kernels().isa) << ")\n";
  return report.emitted > 0 ? kExitOk : kExitDataError;
}

int cmd_preview(const SynthOptions& o, std::ostream& out) {
  const PipelineConfig cfg = checked_config(o);
  const auto entries = ingest(o.input, o.tile);
  const std::size_t src = o.index / cfg.samples_per_source;
  if (src >= entries.size()) {
    throw Error(ErrorCode::InvalidArgument, "sample index " + std::to_string(o.index) +
                                                " is past the last source");
  }
  DatasetWriter writer(o.output);
  const ChangeSample sample = synthesize_sample(load_source(entries[src]), cfg, o.index);
  const auto record = writer.write_sample(sample, entries[src], cfg);
  out << "sample " << record.at("sample_id").get<std::string>() << " ("
      << record.at("strategy").get<std::string>() << ", source "
      << record.at("source_id").get<std::string>() << ")\n";
  for (const char* key : {"pre", "post", "change"}) {
    out << key << ": " << (fs::path(o.output) / record.at("files").at(key).get<std::string>()).string()
        << "\n";
  }
  return kExitOk;
}

int cmd_validate(const std::string& output, std::ostream& out, std::ostream& err) {
  const auto records = read_manifest(output);
  const auto failures = validate_output(output);
  for (const auto& f : failures) err << "FAIL " << f.sample_id << ": " << f.reason << "\n";
  if (!failures.empty()) {
    err << failures.size() << " problem(s) in " << records.size() << " samples\n";
    return kExitDataError;
  }
  out << "ok: " << records.size() << " samples re-derived and checksum-verified\n";
  return kExitOk;
}

int cmd_metrics(const std::string& pred_dir, const std::string& gt_dir, bool macro,
                std::ostream& out) {
  std::vector<fs::path> preds;
  for (const auto& e : fs::directory_iterator(pred_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".png") preds.push_back(e.path());
  }
  std::sort(preds.begin(), preds.end());
  if (preds.empty()) throw Error(ErrorCode::MissingMask, "no .png masks in " + pred_dir);
  std::vector<ConfusionCounts> counts;
  for (const auto& p : preds) {
    const fs::path g = fs::path(gt_dir) / p.filename();
    if (!fs::is_regular_file(g)) throw Error(ErrorCode::MissingMask, p.stem().string());
    counts.push_back(confusion(read_mask(p), read_mask(g)));
  }
  const MetricSummary s = summarize(counts, macro);
  char line[128];
  std::snprintf(line, sizeof line, "IoU: %.2f%%\nF1: %.2f%%\n", 100.0 * s.iou, 100.0 * s.f1);
  out << "pairs: " << counts.size() << (macro ? " (macro)" : " (micro)") << "\n" << line;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesize bi-temporal change-detection samples from single-temporal images"};
  app.name(args.empty() ? "self-pair" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  SynthOptions synth_opts, preview_opts;
  auto* synth = app.add_subcommand("synth", "Run the full synthesis pipeline");
  add_synth_options(*synth, synth_opts, false);
  auto* preview = app.add_subcommand("preview", "Synthesize one sample and print its paths");
  add_synth_options(*preview, preview_opts, true);

  std::string validate_dir;
  auto* validate = app.add_subcommand("validate", "Re-derive and checksum-verify a manifest");
  validate->add_option("--output", validate_dir, "Output directory of a synth run")->required();

  std::string pred_dir, gt_dir;
  bool macro = false;
  auto* metrics = app.add_subcommand("metrics", "IoU / F1 between two directories of masks");
  metrics->add_option("--pred", pred_dir, "Predicted masks")->required()->check(CLI::ExistingDirectory);
  metrics->add_option("--gt", gt_dir, "Reference masks")->required()->check(CLI::ExistingDirectory);
  metrics->add_flag("--macro", macro, "Average per-pair scores instead of pooling counts");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());  // CLI11 consumes from the back
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_opts, out, err);
    if (preview->parsed()) return cmd_preview(preview_opts, out);
    if (validate->parsed()) return cmd_validate(validate_dir, out, err);
    if (metrics->parsed()) return cmd_metrics(pred_dir, gt_dir, macro, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace selfpair
