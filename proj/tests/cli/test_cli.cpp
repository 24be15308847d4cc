#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "vap/pipeline.hpp"
#include "vap/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(VAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path workdir() {
  fs::path dir(VAP_TEST_TMPDIR);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("missing scenario file exits with code 2") {
  fs::path dir = workdir();
  fs::path cfg = dir / "cfg.json";
  vap::pipeline::save_config(vap::pipeline::presets::config_for("tiny"), cfg.string());
  int rc = run_cli("run --config " + cfg.string() + " --scenario " +
                   (dir / "no_such_scenario.json").string() + " --out " + (dir / "out").string());
  CHECK(rc == 2);
}

TEST_CASE("missing config file exits with code 2") {
  fs::path dir = workdir();
  fs::path spec = dir / "tiny.json";
  vap::scenario::save_spec(vap::scenario::presets::tiny_demo(), spec.string());
  int rc = run_cli("run --config " + (dir / "no_such_config.json").string() + " --scenario " +
                   spec.string() + " --out " + (dir / "out").string());
  CHECK(rc == 2);
}

TEST_CASE("scenario preset then run produces the full artifact set") {
  fs::path dir = workdir() / "tiny_flow";
  fs::remove_all(dir);
  REQUIRE(run_cli("scenario --preset tiny --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "tiny_demo.json"));
  CHECK(fs::exists(dir / "bootstrap.json"));
  CHECK(fs::exists(dir / "config.json"));

  fs::path out = dir / "results";
  int rc = run_cli("run --config " + (dir / "config.json").string() + " --scenario " +
                   (dir / "tiny_demo.json").string() + " --out " + out.string());
  REQUIRE(rc == 0);
  for (const char* name : {"detections.csv", "tracks.csv", "cumulative_error.csv",
                           "metrics.csv", "map.csv", "refinements.csv", "context_final.json"})
    CHECK(fs::exists(out / name));

  // every artifact parses: headers present, row arity consistent
  for (const char* name : {"detections.csv", "tracks.csv", "cumulative_error.csv",
                           "metrics.csv", "map.csv"}) {
    std::ifstream in(out / name);
    std::string header;
    REQUIRE(std::getline(in, header));
    std::size_t columns = std::count(header.begin(), header.end(), ',');
    std::string line;
    while (std::getline(in, line))
      CHECK(std::count(line.begin(), line.end(), ',') == static_cast<long>(columns));
  }
  fs::remove_all(dir);
}

TEST_CASE("seed override changes the outputs deterministically") {
  fs::path dir = workdir() / "seed_flow";
  fs::remove_all(dir);
  REQUIRE(run_cli("scenario --preset tiny --out " + dir.string()) == 0);
  std::string base = "run --config " + (dir / "config.json").string() + " --scenario " +
                     (dir / "tiny_demo.json").string();
  REQUIRE(run_cli(base + " --seed 7 --out " + (dir / "a").string()) == 0);
  REQUIRE(run_cli(base + " --seed 7 --out " + (dir / "b").string()) == 0);
  REQUIRE(run_cli(base + " --seed 8 --out " + (dir / "c").string()) == 0);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  CHECK(slurp(dir / "a" / "detections.csv") == slurp(dir / "b" / "detections.csv"));
  CHECK(slurp(dir / "a" / "detections.csv") != slurp(dir / "c" / "detections.csv"));
  fs::remove_all(dir);
}

TEST_CASE("ablate writes per-configuration artifacts and the joined curve") {
  fs::path dir = workdir() / "ablate_flow";
  fs::remove_all(dir);
  REQUIRE(run_cli("scenario --preset tiny --out " + dir.string()) == 0);
  fs::path out = dir / "ablation";
  int rc = run_cli("ablate --config " + (dir / "config.json").string() + " --scenario " +
                   (dir / "tiny_demo.json").string() + " --out " + out.string() +
                   " --ablate-set bottom_up --ablate-set full");
  REQUIRE(rc == 0);
  CHECK(fs::exists(out / "ablation_cumulative_error.csv"));
  CHECK(fs::exists(out / "bottom_up" / "cumulative_error.csv"));
  CHECK(fs::exists(out / "full" / "cumulative_error.csv"));
  CHECK(!fs::exists(out / "context_fusion"));

  std::ifstream in(out / "ablation_cumulative_error.csv");
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "instance_index,bottom_up,full");
  fs::remove_all(dir);
}
