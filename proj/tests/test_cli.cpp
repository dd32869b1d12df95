// Copyright 2026 The Qihyp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qihyp/errors.hpp"

using namespace qihyp;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "qihyp_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path sanov_group_file() {
  return write_file("sanov.json", R"({
    "inverseClosed": false,
    "generators": [
      {"label": "x", "matrix": [[1, 2], [0, 1]]},
      {"label": "y", "matrix": [[1, 0], [2, 1]]}
    ]
  })");
}

fs::path rotation_group_file() {
  // An irrational-angle rotation and a diagonal hyperbolic element.
  const auto rot = hyp2::MoebiusElement::rotation(hyp2::HPoint(0, 1), 1.0);
  json j;
  j["inverseClosed"] = false;
  j["generators"] = json::array();
  j["generators"].push_back(
      {{"label", "r"},
       {"matrix", {{rot.a(), rot.b()}, {rot.c(), rot.d()}}}});
  j["generators"].push_back(
      {{"label", "t"}, {"matrix", {{2.0, 0.0}, {0.0, 0.5}}}});
  return write_file("rotation.json", j.dump());
}

cli::RunConfig config_from_text(const std::string& subcommand,
                                const std::string& name,
                                const std::string& text) {
  return cli::load_config(subcommand, write_file(name, text));
}

}  // namespace

TEST_CASE("strict config parsing") {
  CHECK_THROWS_AS(
      cli::run(config_from_text("words", "bad_key.json",
                                R"({"iMax": 2, "wat": 1, "out": "o.json"})")),
      ValidationError);

  CHECK_THROWS_WITH_AS(
      cli::run(config_from_text("words", "bad_key2.json",
                                R"({"iMax": 2, "celing": 3, "out": "o.json"})")),
      doctest::Contains("celing"), ValidationError);

  try {
    config_from_text("words", "malformed.json", "{\n  \"iMax\": 2,\n}\n");
    FAIL("expected a parse failure");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }

  // Missing seed on a randomized subcommand.
  CHECK_THROWS_AS(
      cli::run(config_from_text("packing", "no_seed.json",
                                R"({"R": 3, "r": 1, "s": 0.5, "out": "x.csv"})")),
      ValidationError);
}

TEST_CASE("words subcommand emits the level table") {
  const fs::path out = scratch_dir() / "words.json";
  cli::RunConfig config = config_from_text(
      "words", "words.json", R"({"iMax": 2})");
  config.out = out;
  CHECK(cli::run(config) == cli::kExitOk);

  const json rows = json::parse(slurp(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["c"] == 4);
  CHECK(rows[1]["c"] == 8);
  CHECK(rows[2]["c"] == 48);
  CHECK(rows[2]["distinct_reduced"] == 48);

  SUBCASE("level ceiling honored without the override flag") {
    cli::RunConfig big = config_from_text("words", "words4.json", R"({"iMax": 4})");
    big.out = scratch_dir() / "words4.json";
    CHECK_THROWS_AS(cli::run(big), ResourceLimitError);
  }
}

TEST_CASE("packing subcommand emits CSV and is byte-deterministic") {
  const fs::path out1 = scratch_dir() / "pack1.csv";
  const fs::path out2 = scratch_dir() / "pack2.csv";
  const std::string body =
      R"({"seed": 7, "space": "both", "Rs": [2.0, 3.0], "r": 0.5, "s": 0.25})";
  cli::RunConfig config = config_from_text("packing", "pack.json", body);
  config.out = out1;
  CHECK(cli::run(config) == cli::kExitOk);
  config.out = out2;
  CHECK(cli::run(config) == cli::kExitOk);

  const std::string text = slurp(out1);
  CHECK(text == slurp(out2));
  CHECK(text.rfind("space,R,r,s,seed,count,bound,maximal,reject_samples\n", 0) == 0);
  CHECK(text.find("euclidean,2") != std::string::npos);
  CHECK(text.find("hyperbolic,3") != std::string::npos);

  SUBCASE("different seed changes the report") {
    cli::RunConfig other = config_from_text("packing", "pack_other.json", body);
    other.seed = 8;
    other.out = scratch_dir() / "pack3.csv";
    CHECK(cli::run(other) == cli::kExitOk);
    CHECK(slurp(other.out) != text);
  }
}

TEST_CASE("growth subcommand consumes a group file and emits the table") {
  const fs::path group = sanov_group_file();
  const fs::path out = scratch_dir() / "growth.csv";
  json body = {{"groupFile", group.string()},
               {"nMax", 4},
               {"epsilon", 0.01},
               {"variant", "semilocal"}};
  cli::RunConfig config =
      config_from_text("growth", "growth.json", body.dump());
  config.out = out;
  CHECK(cli::run(config) == cli::kExitOk);

  const std::string text = slurp(out);
  CHECK(text.rfind("n,ball,semilocal,local\n", 0) == 0);
  CHECK(text.find("\n4,161,1,\n") != std::string::npos);

  SUBCASE("carriere variant fills the local column") {
    body["variant"] = "carriere";
    cli::RunConfig local =
        config_from_text("growth", "growth_local.json", body.dump());
    local.out = scratch_dir() / "growth_local.csv";
    CHECK(cli::run(local) == cli::kExitOk);
    CHECK(slurp(local.out).find("\n4,161,1,1\n") != std::string::npos);
  }
}

TEST_CASE("freepair subcommand certifies and reports the tower") {
  const fs::path group = rotation_group_file();
  const fs::path out = scratch_dir() / "freepair.json";
  json body = {{"groupFile", group.string()},
               {"seed", 3},
               {"elliptic", "r"},
               {"hyperbolic", "t"},
               {"epsilon0", 0.05},
               {"maxCheckedLength", 8},
               {"towerIMax", 2}};
  cli::RunConfig config =
      config_from_text("freepair", "freepair.json", body.dump());
  config.out = out;
  CHECK(cli::run(config) == cli::kExitOk);

  const json cert = json::parse(slurp(out));
  CHECK(cert["eigenvectorPairingOK"] == true);
  CHECK(cert["weak"] == false);
  CHECK(cert["dichotomyViolation"] == false);
  REQUIRE(cert["tower"].size() == 3);
  CHECK(cert["tower"][2]["imagesInN"].get<int>() >= 16);

  SUBCASE("generators found by ball search when labels are omitted") {
    json searched = {{"groupFile", group.string()},
                     {"seed", 3},
                     {"epsilon0", 0.05},
                     {"maxCheckedLength", 6},
                     {"towerIMax", 1},
                     {"searchDepth", 1}};
    cli::RunConfig auto_config =
        config_from_text("freepair", "freepair_auto.json", searched.dump());
    auto_config.out = scratch_dir() / "freepair_auto.json";
    CHECK(cli::run(auto_config) == cli::kExitOk);
  }

  SUBCASE("byte deterministic") {
    cli::RunConfig again =
        config_from_text("freepair", "freepair2.json", body.dump());
    again.out = scratch_dir() / "freepair_again.json";
    CHECK(cli::run(again) == cli::kExitOk);
    CHECK(slurp(again.out) == slurp(out));
  }
}

TEST_CASE("constants subcommand evaluates the calculus") {
  const fs::path out = scratch_dir() / "constants.json";
  const std::string body = R"({
    "evaluations": [
      {"evaluator": "quasiaction_kappa", "lambda": 2, "epsilon": 0.5, "delta": 1},
      {"evaluator": "S_constant", "lambda": 1, "epsilon": 0, "r": 1},
      {"evaluator": "mainprop_bound", "c": 5, "h0": 2},
      {"evaluator": "R_of_L", "L": 26, "lambda": 2, "epsilon": 1, "h0": 3},
      {"evaluator": "horizontal_lower_bound", "D": 1, "lambda": 1, "epsilon": 0, "delta": 0, "a": 1},
      {"evaluator": "projected_qi_params", "lambda": 1, "epsilon": 0, "delta": 0, "a": 1},
      {"evaluator": "euclid_packing_bound", "R": 3, "r": 1, "s": 0.5},
      {"evaluator": "hyp_packing_bound", "R": 5, "r": 1, "s": 0.5},
      {"evaluator": "disk_area", "R": 1},
      {"evaluator": "growth_floor", "n": 16}
    ]
  })";
  cli::RunConfig config = config_from_text("constants", "constants.json", body);
  config.out = out;
  CHECK(cli::run(config) == cli::kExitOk);

  const json rows = json::parse(slurp(out));
  REQUIRE(rows.size() == 10);
  CHECK(rows[0]["value"].get<double>() == doctest::Approx(2.5));
  CHECK(rows[1]["value"].get<double>() == doctest::Approx(18.1353).epsilon(1e-4));
  CHECK(rows[2]["value"].get<double>() == doctest::Approx(15.0));
  CHECK(rows[3]["value"].get<double>() == doctest::Approx(1.75));
  CHECK(rows[4]["vacuous"] == true);
  CHECK(rows[5]["epsilonPrime"].get<double>() == doctest::Approx(1.0));
  CHECK(rows[6]["value"].get<double>() == doctest::Approx(5.4444).epsilon(1e-4));
  CHECK(rows[7]["value"].get<double>() == doctest::Approx(8.0733).epsilon(1e-4));
  CHECK(rows[8]["value"].get<double>() == doctest::Approx(3.4124).epsilon(1e-4));
  CHECK(rows[9]["value"].get<double>() == doctest::Approx(2.0));

  CHECK_THROWS_AS(
      cli::run(config_from_text(
          "constants", "constants_bad.json",
          R"({"out": "x.json", "evaluations": [{"evaluator": "nope"}]})")),
      ValidationError);
}

TEST_CASE("group file validation") {
  CHECK_THROWS_AS(cli::load_group_file(scratch_dir() / "missing.json"),
                  ValidationError);
  const fs::path bad = write_file("bad_group.json",
                                  R"({"generators": [{"label": "g"}]})");
  CHECK_THROWS_AS(cli::load_group_file(bad), ValidationError);
  const fs::path round = sanov_group_file();
  const auto spec = cli::load_group_file(round);
  CHECK(spec.generators.size() == 2);
  CHECK(cli::group_spec_to_json(spec)["generators"].size() == 2);
}
