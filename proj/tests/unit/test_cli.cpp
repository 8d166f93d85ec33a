// Copyright 2026 The unicover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "unicover/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = unicover::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json cli_json(std::vector<std::string> args) {
  args.emplace_back("--format");
  args.emplace_back("json");
  const Run r = cli(args);
  REQUIRE_MESSAGE(r.code != unicover::cli::kUsageError, r.err);
  return json::parse(r.out);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("pi1 reports simplified presentations") {
  const Run circle = cli({"pi1", "--recipe", "circle:12,1", "--scale", "0.6"});
  CHECK(circle.code == unicover::cli::kSuccess);
  CHECK(circle.out.find("gens: 1, rels: 0, abelianization: Z") != std::string::npos);

  const json filled = cli_json({"pi1", "--recipe", "circle:12,1", "--scale", "2.0"});
  CHECK(filled["scales"][0]["trivial"] == true);

  const json wedge = cli_json({"pi1", "--recipe", "wedge:3x16", "--scale", "nearest"});
  REQUIRE(wedge["scales"].size() == 1);
  CHECK(wedge["scales"][0]["presentation"]["generators"] == 3);
  CHECK(wedge["scales"][0]["free"] == true);
  CHECK(wedge["scales"][0]["scale"].get<double>() == doctest::Approx(2 * std::sin(std::numbers::pi / 16)));

  const json torus = cli_json({"pi1", "--recipe", "torus:4,4", "--scale", "1.4142135623730951"});
  CHECK(torus["scales"][0]["abelianization"] == "Z^2");
}

TEST_CASE("filtration tables") {
  const json c = cli_json({"filtration", "--recipe", "circle:12,1"});
  const auto& rows = c["rows"];
  REQUIRE(rows.size() == 6);
  CHECK(rows.front()["scale"].get<double>() == doctest::Approx(2 * std::sin(std::numbers::pi / 12)));
  CHECK(rows.front()["rank"] == 1);
  CHECK(rows.back()["scale"].get<double>() == doctest::Approx(2.0));
  CHECK(rows.back()["abelianization"] == "0");
  CHECK(rows[1]["image_rank_from_previous"] == 1);

  const auto single = write_temp("unicover_cli_point.json", R"({"name": "pt", "basepoint": 0, "points": [[0, 0]]})");
  const json empty = cli_json({"filtration", "--space", single.string()});
  CHECK(empty["rows"].empty());

  // Each small circle stops contributing once six-step chords fill it.
  const json h = cli_json({"filtration", "--recipe", "hawaiian:3,16"});
  std::vector<std::pair<double, int>> drops;
  int previous = -1;
  for (const auto& row : h["rows"]) {
    if (row["components"] != 1) continue;
    const int rank = row["rank"];
    if (previous >= 0 && rank != previous) drops.emplace_back(row["scale"].get<double>(), rank);
    previous = rank;
  }
  REQUIRE(drops.size() == 3);
  const double six_steps = std::sin(6 * std::numbers::pi / 16);
  CHECK(drops[0].first == doctest::Approx(six_steps / 3));
  CHECK(drops[0].second == 2);
  CHECK(drops[1].first == doctest::Approx(six_steps / 2));
  CHECK(drops[1].second == 1);
  CHECK(drops[2].second == 0);
  CHECK(drops[2].first > drops[1].first);
}

TEST_CASE("slt reports") {
  const Run text = cli({"slt", "--recipe", "hawaiian:3,16"});
  CHECK(text.code == unicover::cli::kSuccess);
  const json h = cli_json({"slt", "--recipe", "hawaiian:3,16"});
  bool named = false;
  for (const auto& row : h["rows"]) {
    if (row["center"] == 0 && row["word"] == "g2" && row["verdict"]["answer"] == "no" &&
        row["conjugator"] == "g1") {
      named = true;
    }
  }
  CHECK(named);

  const json torus = cli_json({"slt", "--recipe", "torus:4,4", "--fine", "1.4142135623730951", "--coarse", "1.5"});
  CHECK(torus["summary"]["no"] == 0);
  CHECK(torus["summary"]["unknown"] == 0);

  const json c = cli_json({"slt", "--recipe", "circle:12,1"});
  CHECK(c["summary"]["no"] == 0);
  CHECK(c["summary"]["unknown"] == 0);
  CHECK(c["fine"].get<double>() < 1.0);

  CHECK(cli({"slt", "--recipe", "circle:12,1", "--fine", "1", "--coarse", "0.5"}).code ==
        unicover::cli::kValidationError);
}

TEST_CASE("compare matrices") {
  const std::vector<std::string> halves{"compare",  "--recipe", "circle:12,1", "--fine",  "0.6", "--coarse",
                                        "0.6,2",    "--chain",  "0,1,2,3,4,5,6", "--chain", "0,11,10,9,8,7,6",
                                        "--chain", "0,1,2,3,4,5,6"};
  const Run text = cli(halves);
  CHECK(text.code == unicover::cli::kSuccess);
  const json doc = cli_json(halves);
  for (const auto& row : doc["rows"]) {
    const bool identical = row["a"] == 0 && row["b"] == 2;
    const bool wide = row["coarse"].get<double>() > 1;
    const std::string want = identical || wide ? "yes" : "no";
    CHECK(row["bp"]["answer"] == want);
    CHECK(row["lasso"]["answer"] == want);
    CHECK(row["james"]["answer"] == want);
  }

  // Figure eight: big circle, small circle, big circle backwards.
  std::string loop = "0";
  for (int v = 1; v <= 15; ++v) loop += "," + std::to_string(v);
  loop += ",0";
  for (int v = 16; v <= 30; ++v) loop += "," + std::to_string(v);
  loop += ",0";
  for (int v = 15; v >= 1; --v) loop += "," + std::to_string(v);
  loop += ",0";
  const json eight = cli_json({"compare", "--recipe", "wedge:1,0.5x16", "--coarse", "1", "--chain", "0",
                               "--chain", loop});
  REQUIRE(eight["rows"].size() == 1);
  CHECK(eight["rows"][0]["bp"]["answer"] == "no");
  CHECK(eight["rows"][0]["lasso"]["answer"] == "yes");

  const json sampled = cli_json({"compare", "--recipe", "circle:12,1", "--samples", "3", "--seed", "7"});
  CHECK(sampled["classes"].size() == 5);
}

TEST_CASE("export graphs and covers") {
  const json cover = cli_json({"export", "--recipe", "circle:12,1", "--scale", "0.6", "--subgroup", "g1 g1"});
  CHECK(cover["cover"]["index"] == 2);
  REQUIRE(cover["vertices"].size() == 24);
  REQUIRE(cover["edges"].size() == 24);
  std::map<std::string, std::vector<std::string>> adjacent;
  for (const auto& e : cover["edges"]) {
    adjacent[e[0]].push_back(e[1]);
    adjacent[e[1]].push_back(e[0]);
  }
  for (const auto& [v, n] : adjacent) CHECK(n.size() == 2);
  // Walking the cycle visits all 24 vertices.
  std::string prev;
  std::string at = cover["vertices"][0];
  std::size_t steps = 0;
  do {
    const auto& n = adjacent[at];
    const std::string next = n[0] == prev ? n[1] : n[0];
    prev = at;
    at = next;
    ++steps;
  } while (at != cover["vertices"][0].get<std::string>() && steps < 100);
  CHECK(steps == 24);

  const json base = cli_json({"export", "--recipe", "circle:12,1", "--scale", "2"});
  const json trivial = cli_json({"export", "--recipe", "circle:12,1", "--scale", "2", "--subgroup", ""});
  CHECK(trivial["cover"]["index"] == 1);
  CHECK(trivial["vertices"].size() == base["vertices"].size());
  CHECK(trivial["edges"].size() == base["edges"].size());

  const Run dot = cli({"export", "--recipe", "circle:12,1", "--scale", "0.6", "--subgroup", "g1 g1", "--format", "dot"});
  CHECK(dot.out.rfind("graph ", 0) == 0);
  CHECK(dot.out.find("\"1:11\"") != std::string::npos);

  CHECK(cli({"export", "--recipe", "torus:4,4", "--scale", "1", "--subgroup", "g1", "--cap", "50"}).code ==
        unicover::cli::kUnknownResult);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == unicover::cli::kUsageError);
  CHECK(cli({"pi1"}).code == unicover::cli::kUsageError);
  CHECK(cli({"pi1", "--recipe", "square:4"}).code == unicover::cli::kUsageError);
  CHECK(cli({"pi1", "--recipe", "circle:12,1", "--format", "dot"}).code == unicover::cli::kUsageError);
  CHECK(cli({"pi1", "--recipe", "circle:12,1", "--scale", "abc"}).code == unicover::cli::kUsageError);
  CHECK(cli({"pi1", "--recipe", "circle:2,1"}).code == unicover::cli::kValidationError);
  CHECK(cli({"export", "--recipe", "circle:12,1", "--scale", "0.6", "--subgroup", "g5"}).code ==
        unicover::cli::kValidationError);
  CHECK(cli({"pi1", "--space", "/nonexistent/space.json"}).code == unicover::cli::kUsageError);
  const auto bad = write_temp("unicover_cli_bad.json", R"({"basepoint": 0, "matrix": [[0, 1], [2, 0]]})");
  CHECK(cli({"pi1", "--space", bad.string()}).code == unicover::cli::kValidationError);
  CHECK(cli({"--help"}).code == unicover::cli::kSuccess);
}

TEST_CASE("json output is deterministic and can go to a file") {
  const std::vector<std::vector<std::string>> commands{
      {"pi1", "--recipe", "torus:4,4", "--scale", "all"},
      {"filtration", "--recipe", "random:8,2,11"},
      {"slt", "--recipe", "hawaiian:2,16"},
      {"compare", "--recipe", "random:8,2,3", "--seed", "5", "--budget", "1000"},
      {"export", "--recipe", "circle:12,1", "--scale", "0.6", "--subgroup", "g1 g1 g1"},
  };
  for (const auto& args : commands) {
    CAPTURE(args.front());
    auto with = args;
    with.insert(with.end(), {"--format", "json"});
    const Run first = cli(with);
    const Run second = cli(with);
    CHECK(first.out == second.out);
    CHECK(json::parse(first.out).contains("provenance"));
  }
  const auto path = std::filesystem::temp_directory_path() / "unicover_cli_out.json";
  std::filesystem::remove(path);
  const Run r = cli({"pi1", "--recipe", "circle:12,1", "--format", "json", "--out", path.string()});
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["provenance"]["tool"] == "unicover");
}

}  // TEST_SUITE
