#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sossym/moment.hpp"

namespace sossym::cli {

using nlohmann::json;

enum class Format { json, csv };

struct RunConfig {
  std::string subcommand;

  int n = 0;
  int t = 0;
  // maxcut
  std::string omega;
  std::string mode = "both";
  std::optional<std::string> emit_dir;
  // knapsack
  std::optional<std::string> epsilon;
  bool search = false;
  std::string logbase = "2";
  std::optional<std::string> demand;
  std::optional<std::string> kc_general;
  // reduce
  std::string levels_path;
  // crosscheck
  int samples = 100;
  std::uint64_t seed = 1;
  // verify
  std::string matrix_path;
  std::string cert_path;

  std::optional<std::string> output;
  Format format = Format::json;
  std::optional<std::size_t> threads;

  json to_json() const;
};

struct RunResult {
  /// 0 pass / feasible, 1 fail / infeasible, 2 usage or internal error.
  int exit_code = 2;
  json report;
};

/// Never throws: errors become exit code 2 with an "error" field.
RunResult run(const RunConfig& config);

/// JSON (indented) or CSV with one "path,value" line per scalar.
std::string render(const json& report, Format format);

struct CrosscheckSample {
  std::string kind;
  LevelVector z;
  bool reduction_psd = false;
  bool direct_psd = false;
};

struct CrosscheckResult {
  int n = 0;
  int t = 0;
  std::vector<CrosscheckSample> samples;

  std::size_t agreements() const;
  bool all_agree() const { return agreements() == samples.size(); }
};

/// One random symmetric level vector. Kinds: "uniform" (entries in [-1, 1]),
/// "convex" (mixtures of uniform distributions on levels, always PSD),
/// "perturbed" (a Max-Cut solution with one level nudged) and "boundary" (an
/// unperturbed Max-Cut solution, often on the PSD boundary).
CrosscheckSample draw_sample(int n, std::uint64_t seed, std::size_t index);

/// Requires 2 <= n <= 12 and 1 <= t <= min(3, n).
CrosscheckResult crosscheck(int n, int t, int samples, std::uint64_t seed);

}  // namespace sossym::cli
