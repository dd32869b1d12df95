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

#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qihyp/errors.hpp"
#include "qihyp/freewords.hpp"
#include "qihyp/packing.hpp"
#include "qihyp/product_qi.hpp"
#include "qihyp/rng.hpp"

namespace qihyp::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!j.is_object()) {
    throw ValidationError(context + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError(context + ": unknown key '" + key + "'");
    }
  }
}

double require_number(const json& j, const std::string& key,
                      const std::string& context) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(context + ": missing or non-numeric '" + key + "'");
  }
  return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ValidationError("'" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

long integer_or(const json& j, const std::string& key, long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ValidationError("'" + key + "' must be an integer");
  }
  return j.at(key).get<long>();
}

std::string string_or(const json& j, const std::string& key,
                      const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) {
    throw ValidationError("'" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot open output file '" + path.string() + "'");
  }
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::pair<int, int> line_column_of(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::uint64_t require_seed(const RunConfig& config) {
  if (!config.seed) {
    throw ValidationError("subcommand '" + config.subcommand +
                          "' uses randomness and requires a seed");
  }
  return *config.seed;
}

grouplab::MetricConfig metric_config_from(const json& params,
                                          double default_epsilon) {
  grouplab::MetricConfig cfg;
  cfg.epsilon = number_or(params, "epsilon", default_epsilon);
  cfg.dedupe_quantum =
      number_or(params, "dedupeQuantum", cfg.epsilon / 10.0);
  const std::string variant = string_or(params, "variant", "semilocal");
  if (variant == "semilocal") {
    cfg.variant = grouplab::GrowthVariant::SemilocalOnly;
  } else if (variant == "carriere") {
    cfg.variant = grouplab::GrowthVariant::CarriereLocal;
  } else {
    throw ValidationError("variant must be 'semilocal' or 'carriere'");
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// packing

int run_packing(const RunConfig& config) {
  check_keys(config.params, {"seed", "out", "space", "R", "Rs", "r", "s"},
             "packing config");
  const std::uint64_t seed = require_seed(config);
  const double r = require_number(config.params, "r", "packing config");
  const double s = require_number(config.params, "s", "packing config");

  std::vector<double> radii;
  if (config.params.contains("Rs")) {
    if (!config.params.at("Rs").is_array()) {
      throw ValidationError("packing config: 'Rs' must be an array");
    }
    for (const auto& v : config.params.at("Rs")) {
      if (!v.is_number()) throw ValidationError("packing config: non-numeric R");
      radii.push_back(v.get<double>());
    }
  }
  if (config.params.contains("R")) {
    radii.push_back(require_number(config.params, "R", "packing config"));
  }
  if (radii.empty()) {
    throw ValidationError("packing config: provide 'R' or 'Rs'");
  }

  const std::string space = string_or(config.params, "space", "both");
  std::vector<packing::Space> spaces;
  if (space == "euclidean") {
    spaces = {packing::Space::Euclidean};
  } else if (space == "hyperbolic") {
    spaces = {packing::Space::Hyperbolic};
  } else if (space == "both") {
    spaces = {packing::Space::Euclidean, packing::Space::Hyperbolic};
  } else {
    throw ValidationError("packing config: space must be euclidean, hyperbolic or both");
  }

  std::ostringstream csv;
  csv << "space,R,r,s,seed,count,bound,maximal,reject_samples\n";
  bool violation = false;
  std::uint64_t stream = 0;
  for (const double R : radii) {
    for (const packing::Space sp : spaces) {
      const packing::PackingConfig pc{sp, R, r, s};
      packing::validate(pc);
      const std::uint64_t row_seed = mix_seed(seed, stream++);
      const auto result = packing::greedy_pack(pc, row_seed);
      const double bound = packing::bound_for(pc);
      const bool euclid = sp == packing::Space::Euclidean;
      if (euclid && static_cast<double>(result.count()) > bound + 1e-9) {
        violation = true;
      }
      if (!euclid && result.maximal && bound >= 1.0 &&
          static_cast<double>(result.count()) < bound) {
        violation = true;
      }
      csv << (euclid ? "euclidean" : "hyperbolic") << ','
          << format_double(R) << ',' << format_double(r) << ','
          << format_double(s) << ',' << row_seed << ',' << result.count()
          << ',' << format_double(bound) << ','
          << (result.maximal ? "true" : "false") << ',' << result.reject_samples
          << '\n';
    }
  }
  write_text(config.out, csv.str());
  return violation ? kExitPropertyViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// growth

int run_growth(const RunConfig& config) {
  check_keys(config.params,
             {"seed", "out", "groupFile", "nMax", "epsilon", "variant",
              "dedupeQuantum"},
             "growth config");
  const std::string group_file =
      string_or(config.params, "groupFile", "");
  if (group_file.empty()) {
    throw ValidationError("growth config: 'groupFile' is required");
  }
  const auto spec = load_group_file(group_file);
  const int n_max = static_cast<int>(
      integer_or(config.params, "nMax", -1));
  if (n_max < 0) throw ValidationError("growth config: 'nMax' (>= 0) is required");
  grouplab::MetricConfig cfg = metric_config_from(config.params, 0.05);
  if (config.ceiling_override) cfg.max_elements = 50'000'000;

  const auto table = grouplab::semilocal_growth(spec, n_max, cfg);

  std::ostringstream csv;
  csv << "n,ball,semilocal,local\n";
  bool violation = false;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (i > 0) {
      const auto& prev = table.rows[i - 1];
      if (row.ball_size < prev.ball_size || row.semilocal < prev.semilocal ||
          row.semilocal > row.ball_size) {
        violation = true;
      }
      if (row.local && prev.local && *row.local < *prev.local) violation = true;
    }
    if (row.local && *row.local > row.semilocal) violation = true;
    csv << row.n << ',' << row.ball_size << ',' << row.semilocal << ',';
    if (row.local) csv << *row.local;
    csv << '\n';
  }
  write_text(config.out, csv.str());
  return violation ? kExitPropertyViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// freepair

int run_freepair(const RunConfig& config) {
  check_keys(config.params,
             {"seed", "out", "groupFile", "elliptic", "hyperbolic", "epsilon0",
              "maxCheckedLength", "searchDepth", "angleTol", "towerIMax",
              "epsilon", "dedupeQuantum", "variant"},
             "freepair config");
  const std::string group_file = string_or(config.params, "groupFile", "");
  if (group_file.empty()) {
    throw ValidationError("freepair config: 'groupFile' is required");
  }
  const auto spec = load_group_file(group_file);
  const double epsilon0 = number_or(config.params, "epsilon0", 0.05);
  const int max_checked =
      static_cast<int>(integer_or(config.params, "maxCheckedLength", 8));
  const int search_depth =
      static_cast<int>(integer_or(config.params, "searchDepth", 2));
  const double angle_tol = number_or(config.params, "angleTol", 1e-5);
  const int tower_i_max =
      static_cast<int>(integer_or(config.params, "towerIMax", 2));
  const int tower_ceiling = config.ceiling_override ? 3 : 2;

  grouplab::MetricConfig cfg = metric_config_from(config.params, epsilon0);

  auto find_by_label = [&](const std::string& label) {
    for (const auto& g : spec.generators) {
      if (g.label == label) return g.element;
    }
    throw ValidationError("freepair config: no generator labeled '" + label + "'");
  };

  grouplab::MoebiusElement elliptic;
  if (config.params.contains("elliptic")) {
    elliptic = find_by_label(string_or(config.params, "elliptic", ""));
  } else {
    const auto found =
        grouplab::find_infinite_order_elliptic(spec, search_depth, angle_tol, cfg);
    if (!found) {
      throw ValidationError(
          "freepair: no heuristically infinite-order elliptic in the depth-" +
          std::to_string(search_depth) + " ball");
    }
    elliptic = found->entry.element;
  }

  grouplab::MoebiusElement hyperbolic;
  if (config.params.contains("hyperbolic")) {
    hyperbolic = find_by_label(string_or(config.params, "hyperbolic", ""));
  } else {
    bool found = false;
    for (const auto& entry : grouplab::ball_enumerate(spec, search_depth, cfg)) {
      if (hyp2::classify(entry.element).tag == hyp2::IsomTag::Hyperbolic) {
        hyperbolic = entry.element;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ValidationError("freepair: no hyperbolic element in the depth-" +
                            std::to_string(search_depth) + " ball");
    }
  }

  const auto cert =
      grouplab::build_free_pair(elliptic, hyperbolic, epsilon0, max_checked);
  const auto tower =
      grouplab::commutator_tower_growth(cert, tower_i_max, tower_ceiling);

  json out;
  out["a"] = {{"matrix",
               {{cert.a.a(), cert.a.b()}, {cert.a.c(), cert.a.d()}}}};
  out["b"] = {{"matrix",
               {{cert.b.a(), cert.b.b()}, {cert.b.c(), cert.b.d()}}}};
  out["epsilon0"] = cert.epsilon0;
  out["maxCheckedLength"] = cert.max_checked_length;
  out["eigenvectorPairingOK"] = cert.eigenvector_pairing_ok;
  out["weak"] = cert.weak;
  out["minPairingMagnitude"] = cert.min_pairing_magnitude;
  out["displacementA"] = cert.displacement_a;
  out["displacementB"] = cert.displacement_b;
  out["exponents"] = {{"m", cert.m_exponent},
                      {"k", cert.k_exponent},
                      {"l", cert.l_exponent}};
  json rows = json::array();
  for (const auto& row : tower.rows) {
    rows.push_back({{"i", row.level},
                    {"imagesInN", row.images_in_neighborhood},
                    {"floor", row.floor_pow},
                    {"distinctImages", row.distinct_images},
                    {"shortfall", row.shortfall}});
  }
  out["tower"] = rows;
  out["dichotomyViolation"] = tower.dichotomy_violation;
  if (tower.dichotomy_violation) out["finding"] = tower.finding;
  write_json(config.out, out);
  return tower.dichotomy_violation ? kExitPropertyViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// constants

json evaluate_constant(const json& e) {
  check_keys(e,
             {"evaluator", "lambda", "epsilon", "delta", "a", "kappa", "r",
              "R", "s", "c", "h0", "L", "D", "n"},
             "constants evaluation");
  const std::string name = string_or(e, "evaluator", "");
  json out = e;
  const auto qi_params = [&]() {
    product_qi::QIParams p;
    p.lambda = number_or(e, "lambda", 1.0);
    p.epsilon = number_or(e, "epsilon", 0.0);
    p.delta = number_or(e, "delta", 0.0);
    p.a = number_or(e, "a", 1.0);
    p.kappa = e.contains("kappa")
                  ? e.at("kappa").get<double>()
                  : product_qi::quasiaction_kappa(p.lambda, p.epsilon, p.delta);
    return p;
  };
  if (name == "quasiaction_kappa") {
    out["value"] = product_qi::quasiaction_kappa(
        require_number(e, "lambda", name), require_number(e, "epsilon", name),
        require_number(e, "delta", name));
  } else if (name == "S_constant") {
    out["value"] = product_qi::S_constant(require_number(e, "lambda", name),
                                          require_number(e, "epsilon", name),
                                          require_number(e, "r", name));
  } else if (name == "mainprop_bound") {
    out["value"] = product_qi::mainprop_bound(require_number(e, "c", name),
                                              require_number(e, "h0", name));
  } else if (name == "R_of_L") {
    out["value"] = product_qi::R_of_L(
        require_number(e, "L", name), require_number(e, "lambda", name),
        require_number(e, "epsilon", name), require_number(e, "h0", name));
  } else if (name == "L_of_R") {
    out["value"] = product_qi::L_of_R(
        require_number(e, "R", name), require_number(e, "lambda", name),
        require_number(e, "epsilon", name), require_number(e, "h0", name));
  } else if (name == "horizontal_lower_bound") {
    const auto bound =
        product_qi::horizontal_lower_bound(require_number(e, "D", name), qi_params());
    if (bound) {
      out["value"] = *bound;
      out["vacuous"] = false;
    } else {
      out["vacuous"] = true;
    }
  } else if (name == "projected_qi_params") {
    const auto p = product_qi::projected_qi_params(qi_params());
    out["lambdaPrime"] = p.lambda_prime;
    out["epsilonPrime"] = p.epsilon_prime;
    out["dPrime"] = p.d_prime;
  } else if (name == "euclid_packing_bound") {
    out["value"] = packing::euclid_packing_bound(require_number(e, "R", name),
                                                 require_number(e, "r", name),
                                                 require_number(e, "s", name));
  } else if (name == "hyp_packing_bound") {
    out["value"] = packing::hyp_packing_bound(require_number(e, "R", name),
                                              require_number(e, "r", name),
                                              require_number(e, "s", name));
  } else if (name == "disk_area") {
    out["value"] = hyp2::disk_area(require_number(e, "R", name));
  } else if (name == "growth_floor") {
    out["value"] = freewords::growth_floor(require_number(e, "n", name));
  } else {
    throw ValidationError("constants config: unknown evaluator '" + name + "'");
  }
  return out;
}

int run_constants(const RunConfig& config) {
  check_keys(config.params, {"seed", "out", "evaluations"}, "constants config");
  if (!config.params.contains("evaluations") ||
      !config.params.at("evaluations").is_array()) {
    throw ValidationError("constants config: 'evaluations' array is required");
  }
  json out = json::array();
  for (const auto& e : config.params.at("evaluations")) {
    out.push_back(evaluate_constant(e));
  }
  write_json(config.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// words

int run_words(const RunConfig& config) {
  check_keys(config.params, {"seed", "out", "iMax"}, "words config");
  const int i_max = static_cast<int>(integer_or(config.params, "iMax", -1));
  if (i_max < 0) throw ValidationError("words config: 'iMax' (>= 0) is required");
  const int ceiling =
      config.ceiling_override ? 4 : freewords::kDefaultLevelCeiling;

  json out = json::array();
  bool violation = false;
  std::uint64_t prev_count = 0;
  for (int i = 0; i <= i_max; ++i) {
    const auto level = freewords::gen_comm_level(i, ceiling);
    std::set<freewords::FreeWord> reduced;
    std::size_t min_len = level.words.empty() ? 0 : SIZE_MAX;
    std::size_t max_len = 0;
    for (const auto& w : level.words) {
      auto r = freewords::reduce(w);
      min_len = std::min(min_len, r.size());
      max_len = std::max(max_len, r.size());
      reduced.insert(std::move(r));
    }
    const std::uint64_t count = level.words.size();
    const std::uint64_t floor_pow = std::uint64_t{1} << (std::uint64_t{1} << i);
    if (reduced.size() != count) violation = true;
    if (count < floor_pow) violation = true;
    if (i >= 1 && count != prev_count * (prev_count - 2)) violation = true;
    prev_count = count;
    out.push_back({{"i", i},
                   {"c", count},
                   {"distinct_reduced", reduced.size()},
                   {"min_reduced_length", min_len},
                   {"max_reduced_length", max_len}});
  }
  write_json(config.out, out);
  return violation ? kExitPropertyViolation : kExitOk;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

grouplab::GroupSpec load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open group file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column_of(buffer.str(), e.byte);
    throw ValidationError("group file '" + path.string() +
                          "': malformed JSON at line " + std::to_string(line) +
                          ", column " + std::to_string(column));
  }
  check_keys(j, {"generators", "inverseClosed"}, "group file");
  if (!j.contains("generators") || !j.at("generators").is_array()) {
    throw ValidationError("group file: 'generators' array is required");
  }
  grouplab::GroupSpec spec;
  if (j.contains("inverseClosed")) {
    if (!j.at("inverseClosed").is_boolean()) {
      throw ValidationError("group file: 'inverseClosed' must be boolean");
    }
    spec.inverse_closed = j.at("inverseClosed").get<bool>();
  }
  for (const auto& g : j.at("generators")) {
    check_keys(g, {"label", "matrix"}, "group file generator");
    const std::string label = string_or(g, "label", "");
    if (label.empty()) {
      throw ValidationError("group file: generator 'label' is required");
    }
    if (!g.contains("matrix") || !g.at("matrix").is_array() ||
        g.at("matrix").size() != 2 || !g.at("matrix")[0].is_array() ||
        g.at("matrix")[0].size() != 2 || !g.at("matrix")[1].is_array() ||
        g.at("matrix")[1].size() != 2) {
      throw ValidationError("group file: generator 'matrix' must be 2x2");
    }
    const auto& m = g.at("matrix");
    spec.generators.push_back(
        {label, hyp2::MoebiusElement(m[0][0].get<double>(), m[0][1].get<double>(),
                                     m[1][0].get<double>(), m[1][1].get<double>())});
  }
  return spec;
}

nlohmann::json group_spec_to_json(const grouplab::GroupSpec& spec) {
  json j;
  j["inverseClosed"] = spec.inverse_closed;
  json gens = json::array();
  for (const auto& g : spec.generators) {
    gens.push_back({{"label", g.label},
                    {"matrix",
                     {{g.element.a(), g.element.b()},
                      {g.element.c(), g.element.d()}}}});
  }
  j["generators"] = gens;
  return j;
}

RunConfig load_config(const std::string& subcommand,
                      const std::filesystem::path& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open config file '" + config_path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column_of(buffer.str(), e.byte);
    throw ValidationError("config '" + config_path.string() +
                          "': malformed JSON at line " + std::to_string(line) +
                          ", column " + std::to_string(column));
  }
  RunConfig config;
  config.subcommand = subcommand;
  config.params = j;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) {
      throw ValidationError("config: 'seed' must be an integer");
    }
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("out")) {
    config.out = string_or(j, "out", "");
  }
  return config;
}

int run(const RunConfig& config) {
  if (config.out.empty()) {
    throw ValidationError("no output path: set 'out' in the config or pass --out");
  }
  if (config.subcommand == "packing") return run_packing(config);
  if (config.subcommand == "growth") return run_growth(config);
  if (config.subcommand == "freepair") return run_freepair(config);
  if (config.subcommand == "constants") return run_constants(config);
  if (config.subcommand == "words") return run_words(config);
  throw ValidationError("unknown subcommand '" + config.subcommand + "'");
}

}  // namespace qihyp::cli
