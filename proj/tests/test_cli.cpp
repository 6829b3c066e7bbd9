#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "selfpair/cli.hpp"
#include "selfpair/dataset_io.hpp"
#include "support/fixtures.hpp"

using namespace selfpair;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "self-pair");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"synth", "--bogus"}).code == kExitUsage);
  const Run r = run({"synth", "--input", "x", "--output", "y", "--frobnicate"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--input") != std::string::npos);  // usage text
  CHECK(run({"synth", "--input", "x", "--output", "y", "--strategies", "crop,mixup"}).code == kExitUsage);
  CHECK(run({"synth", "--input", "x", "--output", "y", "--weights", "0.5,0.5"}).code == kExitUsage);
  CHECK(run({"synth", "--input", "x", "--output", "y", "--blend", "poisson"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("the installed binary maps exit codes too") {
  const std::string exe = SELF_PAIR_EXE;
  CHECK(WEXITSTATUS(std::system((exe + " synth --nope >/dev/null 2>&1").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system((exe + " validate --output /nonexistent/x >/dev/null 2>&1").c_str())) == 1);
}

TEST_CASE("synth, validate and corruption") {
  fixtures::TempDir in("cli-in"), o1("cli-o1"), o2("cli-o2");
  fixtures::write_scene_dataset(in.path(), 4, 80, 64, 5, 3);
  const std::vector<std::string> common{"--input", in.path().string(), "--seed", "7", "--crop-size", "32",
                                        "--samples-per-source", "2"};
  auto synth = [&](const fs::path& out) {
    std::vector<std::string> a{"synth", "--output", out.string()};
    a.insert(a.end(), common.begin(), common.end());
    return run(a);
  };
  const Run r1 = synth(o1.path());
  REQUIRE(r1.code == kExitOk);
  CHECK(r1.out.find("wrote 8 samples") != std::string::npos);
  REQUIRE(synth(o2.path()).code == kExitOk);
  CHECK(slurp(o1.path() / "manifest.jsonl").size() > 0);
  CHECK(run({"validate", "--output", o1.path().string()}).code == kExitOk);
  CHECK(run({"validate", "--output", o2.path().string()}).code == kExitOk);
  for (const auto& rec : read_manifest(o1.path())) {
    for (const char* k : {"pre", "post", "change"}) {
      const std::string rel = rec.at("files").at(k).get<std::string>();
      CHECK(slurp(o1.path() / rel) == slurp(o2.path() / rel));
    }
  }

  const auto records = read_manifest(o2.path());
  const std::string id = records[5].at("sample_id").get<std::string>();
  const fs::path victim = o2.path() / records[5].at("files").at("change").get<std::string>();
  std::string bytes = slurp(victim);
  bytes[bytes.size() - 5] ^= 1;
  std::ofstream(victim, std::ios::binary) << bytes;
  const Run bad = run({"validate", "--output", o2.path().string()});
  CHECK(bad.code == kExitDataError);
  CHECK(bad.err.find(id) != std::string::npos);

  SUBCASE("preview prints paths") {
    fixtures::TempDir pv("cli-pv");
    std::vector<std::string> a{"preview", "--output", pv.path().string(), "--index", "3"};
    a.insert(a.end(), common.begin(), common.end());
    const Run p = run(a);
    CHECK(p.code == kExitOk);
    CHECK(p.out.find("00000003") != std::string::npos);
    CHECK(fs::exists(pv.path() / "change" / "00000003.png"));
  }
}

TEST_CASE("data errors exit with 1") {
  fixtures::TempDir in("cli-bad"), out("cli-bad-out");
  fs::create_directories(in.path() / "images");
  write_file(in.path() / "images" / "lonely.png", encode_png(RasterImage::filled(8, 8, 3, 0)));
  const Run r = run({"synth", "--input", in.path().string(), "--output", out.path().string()});
  CHECK(r.code == kExitDataError);
  CHECK(r.err.find("lonely") != std::string::npos);
}

TEST_CASE("metrics subcommand") {
  fixtures::TempDir pred("cli-pred"), gt("cli-gt");
  write_file(pred.path() / "x.png", encode_png(fixtures::mask_from_rows({{1, 1}, {0, 0}})));
  write_file(gt.path() / "x.png", encode_png(fixtures::mask_from_rows({{1, 0}, {1, 0}})));
  const Run r = run({"metrics", "--pred", pred.path().string(), "--gt", gt.path().string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("IoU: 33.33%") != std::string::npos);
  CHECK(r.out.find("F1: 50.00%") != std::string::npos);
}
