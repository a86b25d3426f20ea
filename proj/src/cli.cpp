#include "sossym/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sossym/json_io.hpp"
#include "sossym/knapsack.hpp"
#include "sossym/maxcut.hpp"
#include "sossym/parallel.hpp"
#include "sossym/symmetry.hpp"

namespace sossym::cli {

using io::quantity;

json RunConfig::to_json() const {
  json j{{"subcommand", subcommand}, {"format", format == Format::json ? "json" : "csv"}, {"seed", seed}};
  if (threads) j["threads"] = *threads;
  if (output) j["output"] = *output;
  if (subcommand == "maxcut") {
    j.update({{"n", n}, {"t", t}, {"omega", omega}, {"mode", mode}});
    if (emit_dir) j["emit"] = *emit_dir;
  } else if (subcommand == "knapsack") {
    j.update({{"n", n}, {"t", t}, {"search", search}, {"logbase", logbase}});
    if (epsilon) j["epsilon"] = *epsilon;
    if (demand) j["demand"] = *demand;
    if (kc_general) j["kc_general"] = *kc_general;
  } else if (subcommand == "reduce") {
    j.update({{"levels", levels_path}, {"t", t}});
  } else if (subcommand == "crosscheck") {
    j.update({{"n", n}, {"t", t}, {"samples", samples}});
  } else if (subcommand == "verify") {
    j.update({{"matrix", matrix_path}, {"cert", cert_path}});
  }
  return j;
}

namespace {

// Bad input that is the caller's fault; reported with exit code 2 like any
// other error but kept distinct for the message.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

json block_json(const BlockVerdict& b) {
  json j{{"h", b.h}, {"skipped", b.skipped}, {"psd", b.psd()}};
  if (b.block) j["dim"] = b.block->q.rows();
  if (b.verdict) {
    if (const auto* c = std::get_if<PsdCertificate>(&*b.verdict)) j["kernel_dim"] = c->kernel_dimension();
    else j["witness_value"] = quantity(std::get<IndefWitness>(*b.verdict).value);
  }
  return j;
}

json reduction_json(const ReductionResult& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) blocks.push_back(block_json(b));
  return blocks;
}

RunResult run_maxcut(const RunConfig& cfg) {
  if (cfg.omega.empty()) throw UsageError("--omega is required");
  const Rational omega = parse_rational(cfg.omega);
  const maxcut::Mode mode = maxcut::parse_mode(cfg.mode);
  const maxcut::FeasibilityReport rep = maxcut::certify_feasibility(cfg.n, omega, cfg.t, mode);

  json j{{"feasible", rep.feasible},
         {"n", rep.n},
         {"omega", to_string(rep.omega)},
         {"t", rep.t},
         {"mode", maxcut::to_string(rep.mode)},
         {"objective", quantity(rep.objective)},
         {"integral_opt", quantity(rep.integral_opt)},
         {"gap", quantity(rep.gap)},
         {"runtime_ms", rep.runtime_ms}};
  j["kernel_dim"] = rep.kernel_dim ? json(*rep.kernel_dim) : json(nullptr);
  if (rep.matrix_dim) j["matrix_dim"] = *rep.matrix_dim;
  if (rep.reduce_psd) j["reduce_psd"] = *rep.reduce_psd;
  if (rep.direct_psd) j["direct_psd"] = *rep.direct_psd;
  if (rep.reduction) j["blocks"] = reduction_json(*rep.reduction);
  j["levels"] = io::to_json(maxcut::gl_solution(cfg.n, omega).levels);

  if (cfg.emit_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(*cfg.emit_dir);
    const MomentMatrix m = matrix_from_levels(maxcut::gl_solution(cfg.n, omega).levels, cfg.t);
    const PsdVerdict v = rep.direct ? *rep.direct : certify_psd(m.matrix);
    const std::string mpath = (fs::path(*cfg.emit_dir) / "matrix.json").string();
    const std::string cpath = (fs::path(*cfg.emit_dir) / (is_psd(v) ? "certificate.json" : "witness.json")).string();
    io::write_file(mpath, io::to_json(m));
    io::write_file(cpath, io::to_json(v));
    j["files"] = json{{"matrix", mpath}, {"certificate", cpath}};
  }
  return {rep.feasible ? 0 : 1, j};
}

json verdict_json(const knapsack::ConstraintVerdict& v) {
  json j{{"name", v.name}, {"status", knapsack::to_string(v.status)}, {"route", v.route}, {"dim", v.dim}};
  if (v.kernel_dim) j["kernel_dim"] = *v.kernel_dim;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json lemma2_json(const knapsack::Lemma2Report& r) {
  json j{{"preconditions_ok", r.preconditions_ok()}, {"violations", r.violations}, {"implication_ok", r.implication_ok}};
  if (r.sufficient) j["sufficient"] = verdict_json(*r.sufficient);
  if (r.demand) j["demand"] = verdict_json(*r.demand);
  std::size_t certified = 0;
  for (const auto& c : r.covers) certified += c.status == knapsack::Status::certified;
  j["covers_certified"] = certified;
  j["covers_checked"] = r.covers.size();
  return j;
}

json solution_json(const knapsack::GapSolution& sol) {
  const Rational obj = knapsack::objective_value(sol);
  const Rational opt = knapsack::integral_optimum(sol);
  return json{{"epsilon", quantity(sol.epsilon)},
              {"logpoint", sol.logpoint},
              {"support", sol.support()},
              {"empty_set_level", quantity(sol.levels[0])},
              {"objective", quantity(obj)},
              {"integral_opt", quantity(opt)},
              {"gap", quantity(opt / obj)},
              {"levels", io::to_json(sol.levels)}};
}

json asymptotic_epsilon_json(int n, int t, knapsack::LogBase base) {
  const double e = knapsack::asymptotic_epsilon(n, t, base);
  if (std::isnan(e)) return json{{"exact", nullptr}, {"approx", nullptr}, {"note", "undefined: log point <= 2"}};
  return json{{"exact", to_string(Rational(e))}, {"approx", e}, {"note", "asymptotic choice, report only"}};
}

RunResult run_kc_general(const RunConfig& cfg) {
  const json spec = io::read_file(*cfg.kc_general);
  knapsack::Instance inst;
  inst.costs = io::vector_from(spec.at("costs"));
  inst.profits = io::vector_from(spec.at("profits"));
  inst.demand = io::rational_from(spec.at("demand"));
  inst.n = static_cast<int>(inst.profits.size());
  json list = json::array();
  for (const auto& c : knapsack::wolsey_inequalities(inst)) {
    list.push_back(json{{"removed", elements_of(c.removed)},
                        {"coeffs", io::vector_json(c.constraint.coeffs)},
                        {"rhs", io::rational_json(-c.constraint.constant)}});
  }
  return {0, json{{"n", inst.n}, {"demand", io::rational_json(inst.demand)}, {"count", list.size()}, {"inequalities", list}}};
}

RunResult run_knapsack(const RunConfig& cfg) {
  if (cfg.kc_general) return run_kc_general(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.t < 1) throw UsageError("--t must be at least 1");
  if (cfg.search == cfg.epsilon.has_value()) throw UsageError("give exactly one of --epsilon and --search");
  if (cfg.demand && cfg.search) throw UsageError("--demand takes a fixed --epsilon");

  const knapsack::LogBase base = knapsack::parse_logbase(cfg.logbase);
  json warnings = json::array();
  int n = cfg.n;
  if (n % cfg.t != 0) {
    n = knapsack::divisible_size(n, cfg.t);
    warnings.push_back("n = " + std::to_string(cfg.n) + " is not divisible by t; using n = " + std::to_string(n));
  }
  if (n < 2) throw UsageError("n must be at least 2 after rounding to a multiple of t");

  json j{{"n", n}, {"t", cfg.t}, {"logbase", knapsack::to_string(base)}, {"warnings", warnings}};
  j["asymptotic_epsilon"] = asymptotic_epsilon_json(n, cfg.t, base);
  const knapsack::CertifyOptions final_opts = knapsack::SearchOptions{}.final;

  std::optional<knapsack::GapSolution> sol;
  std::optional<knapsack::Certification> cert;
  std::optional<knapsack::Lemma2Report> l2;

  if (cfg.demand) {
    const Rational p = parse_rational(*cfg.demand);
    sol = knapsack::theorem3_solution(n, cfg.t, parse_rational(*cfg.epsilon), p, base);
    cert = knapsack::certify_solution(*sol, final_opts);
    j["relaxation"] = "plain LP: sum x_j >= P";
    j["note"] =
        "the statement names the relaxation with cover inequalities while the surrounding text treats the plain LP; "
        "the plain LP is used. Level beta' carries (1+eps)/(P beta'), so the objective is (1+eps)/P + eps t";
  } else if (cfg.search) {
    knapsack::SearchOptions opts;
    opts.logbase = base;
    const knapsack::SearchResult res = knapsack::epsilon_search(n, cfg.t, opts);
    json profile = json::array();
    for (const auto& p : res.profile) profile.push_back(json{{"epsilon", io::rational_json(p.epsilon)}, {"feasible", p.feasible}});
    json bis = json::array();
    for (const auto& p : res.bisection) bis.push_back(json{{"epsilon", io::rational_json(p.epsilon)}, {"feasible", p.feasible}});
    j["search"] = json{{"epsilon_max", quantity(res.epsilon_max)}, {"profile", profile}, {"bisection", bis}, {"message", res.message}};
    j["relaxation"] = "LP with cover inequalities";
    sol = res.solution;
    cert = res.certification;
    l2 = res.lemma2;
  } else {
    sol = knapsack::gap_solution(n, cfg.t, parse_rational(*cfg.epsilon), base);
    cert = knapsack::certify_solution(*sol, final_opts);
    l2 = knapsack::lemma2_check(*sol, final_opts, &*cert);
    j["relaxation"] = "LP with cover inequalities";
  }

  bool feasible = false;
  if (sol) {
    j.update(solution_json(*sol));
    j["epsilon_max"] = quantity(knapsack::epsilon_max(sol->n, sol->t, sol->logpoint, sol->relaxation, sol->demand));
  } else {
    j["epsilon"] = nullptr;
  }
  if (cert) {
    feasible = cert->feasible();
    json verdicts = json::array();
    for (const auto& v : cert->verdicts) verdicts.push_back(verdict_json(v));
    j["per_constraint_verdicts"] = verdicts;
  }
  if (l2) j["lemma2"] = lemma2_json(*l2);
  j["feasible"] = feasible;
  j["runtime_ms"] = elapsed_ms(start);
  return {feasible ? 0 : 1, j};
}

RunResult run_reduce(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const LevelVector z = io::level_vector_from(io::read_file(cfg.levels_path));
  if (cfg.t < 0 || cfg.t > z.n) throw UsageError("--t must satisfy 0 <= t <= n");
  const ReductionResult r = check_reduction(z, cfg.t);
  json j{{"n", z.n}, {"t", cfg.t}, {"psd", r.all_psd()}, {"blocks", reduction_json(r)}, {"runtime_ms", elapsed_ms(start)}};
  return {r.all_psd() ? 0 : 1, j};
}

RunResult run_crosscheck(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const CrosscheckResult r = crosscheck(cfg.n, cfg.t, cfg.samples, cfg.seed);
  std::size_t psd = 0;
  json disagreements = json::array();
  json kinds = json::object();
  for (const auto& s : r.samples) {
    psd += s.direct_psd;
    kinds[s.kind] = kinds.value(s.kind, 0) + 1;
    if (s.direct_psd != s.reduction_psd)
      disagreements.push_back(json{{"kind", s.kind}, {"z", io::to_json(s.z)}, {"reduction_psd", s.reduction_psd}, {"direct_psd", s.direct_psd}});
  }
  json j{{"n", r.n},
         {"t", r.t},
         {"samples", r.samples.size()},
         {"agreements", r.agreements()},
         {"psd", psd},
         {"not_psd", r.samples.size() - psd},
         {"kinds", kinds},
         {"disagreements", disagreements},
         {"runtime_ms", elapsed_ms(start)}};
  // A disagreement contradicts the block reduction theorem: a bug, not a finding.
  return {r.all_agree() ? 0 : 2, j};
}

RunResult run_verify(const RunConfig& cfg) {
  const RationalMatrix m = io::matrix_from(io::read_file(cfg.matrix_path));
  const PsdVerdict v = io::verdict_from(io::read_file(cfg.cert_path));
  bool ok = false;
  json j{{"dim", m.rows()}};
  if (const auto* c = std::get_if<PsdCertificate>(&v)) {
    ok = m.is_symmetric() && verify_certificate(m, *c);
    j["kind"] = "certificate";
    if (ok) j["rank"] = c->rank();
  } else {
    const auto& w = std::get<IndefWitness>(v);
    ok = verify_witness(m, w);
    j["kind"] = "witness";
    if (ok) j["value"] = quantity(quadratic_form(m, w.v));
  }
  j["valid"] = ok;
  return {ok ? 0 : 1, j};
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    out << prefix << ',' << v << '\n';
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    if (config.threads) set_parallelism(*config.threads);
    if (config.subcommand == "maxcut") result = run_maxcut(config);
    else if (config.subcommand == "knapsack") result = run_knapsack(config);
    else if (config.subcommand == "reduce") result = run_reduce(config);
    else if (config.subcommand == "crosscheck") result = run_crosscheck(config);
    else if (config.subcommand == "verify") result = run_verify(config);
    else throw UsageError("unknown subcommand \"" + config.subcommand + "\"");
  } catch (const std::exception& e) {
    result = {2, json{{"error", e.what()}}};
  }
  result.report["config"] = config.to_json();
  result.report["exit_code"] = result.exit_code;
  return result;
}

std::string render(const json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::ostringstream out;
  out << "key,value\n";
  flatten(report, "", out);
  return out.str();
}

std::size_t CrosscheckResult::agreements() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const CrosscheckSample& s) { return s.reduction_psd == s.direct_psd; }));
}

CrosscheckSample draw_sample(int n, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  const auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

  // A non-integral ω in (0, n/2].
  const auto random_omega = [&] {
    while (true) {
      const long q = uniform(2, 4);
      const Rational w = ratio(uniform(1, n * q / 2), q);
      if (w.get_den() != 1 && 2 * w <= n) return w;
    }
  };

  CrosscheckSample s;
  s.z = LevelVector::zeros(n);
  switch (uniform(0, 3)) {
    case 0:
      s.kind = "uniform";
      for (int k = 0; k <= n; ++k) s.z[k] = ratio(uniform(-8, 8), 8);
      break;
    case 1: {
      s.kind = "convex";
      const long parts = uniform(1, 3);
      Rational total = 0;
      std::vector<std::pair<int, long>> picks;
      for (long i = 0; i < parts; ++i) {
        picks.emplace_back(static_cast<int>(uniform(0, n)), uniform(1, 5));
        total += picks.back().second;
      }
      for (const auto& [k, w] : picks) s.z[k] += Rational(w) / total / binom(n, k);
      break;
    }
    case 2: {
      s.kind = "perturbed";
      s.z = maxcut::gl_solution(n, random_omega()).levels;
      const int k = static_cast<int>(uniform(0, n));
      const Rational delta = pow2(-uniform(2, 12)) / binom(n, k);
      s.z[k] += uniform(0, 1) ? delta : Rational(-delta);
      break;
    }
    default:
      s.kind = "boundary";
      s.z = maxcut::gl_solution(n, random_omega()).levels;
      break;
  }
  return s;
}

CrosscheckResult crosscheck(int n, int t, int samples, std::uint64_t seed) {
  if (n < 2 || n > 12) throw UsageError("crosscheck needs 2 <= n <= 12");
  if (t < 1 || t > std::min(3, n)) throw UsageError("crosscheck needs 1 <= t <= min(3, n)");
  if (samples < 0) throw UsageError("--samples must be non-negative");
  CrosscheckResult r{n, t, std::vector<CrosscheckSample>(static_cast<std::size_t>(samples))};
  parallel_for(r.samples.size(), [&](std::size_t i) {
    CrosscheckSample s = draw_sample(n, seed, i);
    s.reduction_psd = check_reduction(s.z, t).all_psd();
    s.direct_psd = is_psd(certify_psd(matrix_from_levels(s.z, t).matrix));
    r.samples[i] = std::move(s);
  });
  return r;
}

}  // namespace sossym::cli
