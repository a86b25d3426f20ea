#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sossym/cli.hpp"

using sossym::cli::Format;
using sossym::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Exact Sum-of-Squares moment matrices for symmetric 0/1 problems"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  std::size_t threads = 0;
  std::string output;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", output, "write the report here instead of stdout");
    sub->add_option("--threads", threads, "worker threads (default: SOSSYM_THREADS or all cores)");
  };

  auto* maxcut = app.add_subcommand("maxcut", "certify the symmetric Max-Cut solution on K_n");
  maxcut->add_option("--n", cfg.n)->required();
  maxcut->add_option("--omega", cfg.omega, "non-integral rational in (0, n/2]")->required();
  maxcut->add_option("--t", cfg.t, "round")->required();
  maxcut->add_option("--mode", cfg.mode)->check(CLI::IsMember({"reduce", "direct", "both"}));
  maxcut->add_option("--emit", cfg.emit_dir, "directory for matrix.json and the certificate or witness");
  common(maxcut);

  auto* knap = app.add_subcommand("knapsack", "min-knapsack gap solution with cover inequalities");
  knap->add_option("--n", cfg.n);
  knap->add_option("--t", cfg.t);
  knap->add_option("--epsilon", cfg.epsilon, "rational epsilon");
  knap->add_flag("--search", cfg.search, "search for a certified epsilon");
  knap->add_option("--logbase", cfg.logbase)->check(CLI::IsMember({"2", "e-floor"}));
  knap->add_option("--demand", cfg.demand, "P in (0,1): plain LP sum x_j >= P");
  knap->add_option("--kc-general", cfg.kc_general, "JSON {costs, profits, demand}: print cover inequalities");
  common(knap);

  auto* reduce = app.add_subcommand("reduce", "per-block verdicts for a level vector");
  reduce->add_option("--levels", cfg.levels_path, "LevelVector JSON")->required();
  reduce->add_option("--t", cfg.t)->required();
  common(reduce);

  auto* cross = app.add_subcommand("crosscheck", "randomized audit: block reduction vs full matrix");
  cross->add_option("--n", cfg.n)->required();
  cross->add_option("--t", cfg.t)->required();
  cross->add_option("--samples", cfg.samples);
  cross->add_option("--seed", cfg.seed);
  common(cross);

  auto* verify = app.add_subcommand("verify", "re-check a certificate or witness against a matrix");
  verify->add_option("--matrix", cfg.matrix_path)->required();
  verify->add_option("--cert", cfg.cert_path)->required();
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "csv" ? Format::csv : Format::json;
  if (threads > 0) cfg.threads = threads;
  if (!output.empty()) cfg.output = output;

  const auto result = sossym::cli::run(cfg);
  const std::string text = sossym::cli::render(result.report, cfg.format);
  if (cfg.output) {
    std::ofstream out(*cfg.output);
    if (!out) {
      std::cerr << "cannot write " << *cfg.output << '\n';
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  if (result.report.contains("error")) std::cerr << "error: " << result.report["error"].get<std::string>() << '\n';
  return result.exit_code;
}
