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

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cli.hpp"
#include "qihyp/errors.hpp"

namespace {

int worker_count() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("QIHYP_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < threads) threads = cap;
  }
  return threads;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qihyp: packing bounds, quasi-isometry constants, and growth "
               "experiments for PSL(2,R) subgroups"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::int64_t seed_flag = -1;
  bool seed_given = false;
  bool ceiling_override = false;

  for (const std::string name :
       {"packing", "growth", "freepair", "constants", "words"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed_flag, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--out", out_path, "override the config output path");
    sub->add_flag("--ceiling-override", ceiling_override,
                  "unlock large-run ceilings (level 3+ towers, deep balls)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string subcommand = app.get_subcommands().front()->get_name();
    qihyp::cli::RunConfig config =
        qihyp::cli::load_config(subcommand, config_path);
    if (seed_given) config.seed = static_cast<std::uint64_t>(seed_flag);
    if (!out_path.empty()) config.out = out_path;
    config.ceiling_override = ceiling_override;
    config.threads = worker_count();
    return qihyp::cli::run(config);
  } catch (const qihyp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return qihyp::cli::kExitValidation;
  } catch (const qihyp::ResourceLimitError& e) {
    std::cerr << "resource ceiling: " << e.what() << "\n";
    return qihyp::cli::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qihyp::cli::kExitValidation;
  }
}
