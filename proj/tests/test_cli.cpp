#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "streamscc/cli.hpp"

using namespace streamscc;
namespace fs = std::filesystem;

namespace {

struct temp_dir {
  fs::path path;
  temp_dir() {
    path = fs::temp_directory_path() /
           ("streamscc_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~temp_dir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) {
    auto p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

const char* kTwoNodeSegments = "n u 0 9\nn v 0 9\nl u v 2 5\n";

}  // namespace

TEST_CASE("cmd_scc writes the canonical components file and summary") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  REQUIRE(cmd_scc(cfg, err) == 0);

  auto components = dir.read("out/components.txt");
  CHECK(components ==
        "[0 2[ 1 u\n"
        "[0 2[ 1 v\n"
        "[2 5] 2 u v\n"
        "]5 9] 1 u\n"
        "]5 9] 1 v\n");

  auto j = nlohmann::json::parse(dir.read("out/summary.json"));
  CHECK(j["algorithm"] == "direct");
  CHECK(j["N"] == 2);
  CHECK(j["M"] == 1);
  CHECK(j["n"] == 2);
  CHECK(j["m"] == 1);
  CHECK(j["event_times"] == 4);
  CHECK(j["component_count"] == 5);
}

TEST_CASE("all algorithms produce byte-identical component files") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  std::string previous;
  for (const char* algo : {"naive", "direct", "fd"}) {
    cfg.algorithm = algo;
    cfg.out_dir = (dir.path / algo).string();
    std::ostringstream err;
    REQUIRE(cmd_scc(cfg, err) == 0);
    auto text = dir.read(std::string(algo) + "/components.txt");
    if (!previous.empty()) CHECK(text == previous);
    previous = text;
  }
}

TEST_CASE("count-only run writes no components file") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  cfg.out_dir = (dir.path / "out").string();
  cfg.count_only = true;
  std::ostringstream err;
  REQUIRE(cmd_scc(cfg, err) == 0);
  CHECK_FALSE(fs::exists(dir.path / "out/components.txt"));
  auto j = nlohmann::json::parse(dir.read("out/summary.json"));
  CHECK(j["component_count"] == 5);
}

TEST_CASE("empty input is a valid stream with zero components") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("empty.txt", "");
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  REQUIRE(cmd_scc(cfg, err) == 0);
  auto j = nlohmann::json::parse(dir.read("out/summary.json"));
  CHECK(j["component_count"] == 0);
}

TEST_CASE("parse errors exit with code 2 and a line number") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("bad.txt", "n u 0 9\nl u v nope 5\n");
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  CHECK(cmd_scc(cfg, err) == 2);
  CHECK(err.str().find("line 2") != std::string::npos);
}

TEST_CASE("missing input exits with code 2") {
  run_config cfg;
  cfg.input = "/nonexistent/input.txt";
  std::ostringstream err;
  CHECK(cmd_scc(cfg, err) == 2);
}

TEST_CASE("sweep rows track the approximation") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt",
                       "u v 1\nu v 14\nu w 2\nv w 27\nu v 41\nw v 43\n");
  cfg.format = "interactions";
  cfg.delta = 10;
  cfg.Deltas = {0, 2, 5};
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  REQUIRE(cmd_sweep(cfg, err) == 0);
  auto csv = dir.read("out/sweep.csv");
  std::istringstream lines(csv);
  std::string header, row0, row2, row5;
  std::getline(lines, header);
  std::getline(lines, row0);
  std::getline(lines, row2);
  std::getline(lines, row5);
  CHECK(header == "Delta,component_count,event_time_count,wall_ms");
  CHECK(row0.substr(0, 2) == "0,");

  // the Delta=0 row matches a plain scc run on the same input
  run_config one = cfg;
  one.out_dir = (dir.path / "one").string();
  REQUIRE(cmd_scc(one, err) == 0);
  auto j = nlohmann::json::parse(dir.read("one/summary.json"));
  auto count0 = std::stoull(row0.substr(2, row0.find(',', 2) - 2));
  CHECK(count0 == j["component_count"].get<std::uint64_t>());

  // event time counts never grow under approximation
  auto parse_row = [](const std::string& row) {
    std::istringstream ss(row);
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
  };
  auto et0 = std::stoull(parse_row(row0)[2]);
  CHECK(std::stoull(parse_row(row2)[2]) <= et0);
  CHECK(std::stoull(parse_row(row5)[2]) <= et0);
}

TEST_CASE("sweep refuses Delta at or above delta without the override") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", "u v 1\n");
  cfg.format = "interactions";
  cfg.delta = 5;
  cfg.Deltas = {5};
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  CHECK(cmd_sweep(cfg, err) == 2);
  cfg.allow_large_Delta = true;
  CHECK(cmd_sweep(cfg, err) == 0);
}

TEST_CASE("latency compare emits identity metrics at Delta zero") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  cfg.Deltas = {0};
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  REQUIRE(cmd_latency_compare(cfg, err) == 0);
  auto csv = dir.read("out/latency_compare.csv");
  CHECK(csv.find("0,0,0,1,0,") != std::string::npos);
  auto jl = dir.read("out/latency_compare.jsonl");
  auto j = nlohmann::json::parse(jl);
  CHECK(j["lrmse"] == 0);
  CHECK(j["missing_paths"] == 0);
}

TEST_CASE("latency compare respects the budget with exit 3") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  cfg.Deltas = {0};
  cfg.latency_budget = 1;
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  CHECK(cmd_latency_compare(cfg, err) == 3);
}

TEST_CASE("stats command summarizes sizes and durations") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream err;
  REQUIRE(cmd_stats(cfg, err) == 0);
  auto csv = dir.read("out/stats.csv");
  // five components: four singletons and one pair
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows
  auto j = nlohmann::json::parse(dir.read("out/stats_summary.json"));
  CHECK(j["count"] == 5);
  CHECK(j["size_p99"] == 2);
}

TEST_CASE("identical runs produce identical files") {
  temp_dir dir;
  run_config cfg;
  cfg.input = dir.file("in.txt", kTwoNodeSegments);
  std::ostringstream err;
  cfg.out_dir = (dir.path / "a").string();
  REQUIRE(cmd_scc(cfg, err) == 0);
  cfg.out_dir = (dir.path / "b").string();
  REQUIRE(cmd_scc(cfg, err) == 0);
  CHECK(dir.read("a/components.txt") == dir.read("b/components.txt"));
}
