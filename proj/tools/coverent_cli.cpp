// coverent: entropy traces, verification suites and packing census from
// the command line. See README.md for the config format.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coverent/config.hpp"
#include "coverent/errors.hpp"
#include "coverent/harness.hpp"
#include "coverent/parallel.hpp"

namespace {

struct Shared {
  std::string config;
  std::optional<int> n_max;
  std::vector<double> epsilons;
  std::optional<int> depth;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> node_budget;
  std::optional<std::string> out;
};

void add_model_flags(CLI::App* cmd, Shared& s) {
  cmd->add_option("--config", s.config, "Experiment config (JSON)");
  cmd->add_option("--n-max", s.n_max, "Largest horizon n")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", s.epsilons, "Epsilon for h_e; repeatable")->take_all();
  cmd->add_option("--depth", s.depth, "Assignment depth D for h_plus")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", s.seed, "Run seed");
  cmd->add_option("--exact-node-budget", s.node_budget, "Branch-and-bound node budget")->check(CLI::PositiveNumber);
  cmd->add_option("--out", s.out, "Output directory");
}

coverent::ExperimentConfig load(const Shared& s) {
  if (s.config.empty()) throw coverent::ConfigError("--config", "required");
  auto cfg = coverent::load_config(s.config);
  if (s.n_max) cfg.n_max = *s.n_max;
  if (!s.epsilons.empty()) cfg.epsilons = s.epsilons;
  if (s.depth) cfg.depth = *s.depth;
  if (s.seed) cfg.seed = *s.seed;
  if (s.node_budget) {
    cfg.budgets.assignment.max_nodes = *s.node_budget;
    cfg.budgets.setcover.max_nodes = *s.node_budget;
  }
  if (s.out) cfg.output = *s.out;
  coverent::check_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy of covers on Markov shifts: traces, checks and packing census"};
  app.require_subcommand(0, 1);
  int threads = 0;
  bool print_schema = false;
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--print-schema", print_schema, "Print the accepted config schema and exit");

  Shared entropy_opts;
  auto* entropy = app.add_subcommand("entropy", "Entropy traces for one system and cover");
  add_model_flags(entropy, entropy_opts);

  Shared decompose_opts;
  auto* decompose = app.add_subcommand("decompose", "Mixture value vs weighted component values");
  add_model_flags(decompose, decompose_opts);
  std::vector<int> decompose_n;
  std::string decompose_notion;
  decompose->add_option("--n", decompose_n, "Horizons; repeatable")->take_all();
  decompose->add_option("--notion", decompose_notion, "h_minus or h_plus");

  auto* verify = app.add_subcommand("verify", "Randomized property suites");
  std::string suite = "all";
  std::uint64_t verify_seed = 0;
  int instances = 100;
  std::string report;
  verify->add_option("--suite", suite, "cover-algebra, assignment, setcover, combinatorics, estimators or all");
  verify->add_option("--seed", verify_seed, "Run seed");
  verify->add_option("--instances", instances, "Instances per suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", report, "Also write the report to this file");

  auto* census = app.add_subcommand("census", "Exact packed-word counts against the bound");
  coverent::CensusRequest creq;
  std::string census_out;
  census->add_option("--alphabet", creq.alphabet, "Alphabet size M");
  census->add_option("--n", creq.n, "Block length n");
  census->add_option("--k-min", creq.k_min, "Smallest word length k");
  census->add_option("--k-max", creq.k_max, "Largest word length k");
  census->add_option("--delta", creq.deltas, "Delta; repeatable")->take_all();
  census->add_option("--mu", creq.mu, "Block distribution (M^n values); default uniform")->take_all();
  census->add_option("--max-bits", creq.budget.max_bits, "Enumeration budget k log2 M");
  census->add_option("--out", census_out, "Output directory for census.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : coverent::kExitInvalidInput;
  }

  if (print_schema) {
    std::cout << coverent::config_schema();
    return 0;
  }
  if (threads > 0) coverent::set_worker_count(threads);

  try {
    if (*entropy) return coverent::run_entropy(load(entropy_opts), std::cerr);
    if (*decompose) {
      auto cfg = load(decompose_opts);
      if (!decompose_n.empty()) cfg.decompose_n = decompose_n;
      if (!decompose_notion.empty()) cfg.decompose_notion = coverent::parse_notion(decompose_notion);
      coverent::check_config(cfg);
      return coverent::run_decompose(cfg, std::cerr);
    }
    if (*verify) return coverent::run_verify(suite, verify_seed, instances, report, std::cout);
    if (*census) {
      creq.output = census_out;
      return coverent::run_census(creq, std::cout);
    }
    std::cout << app.help();
    return 0;
  } catch (const coverent::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return coverent::kExitInvalidInput;
  } catch (const coverent::CapacityError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return coverent::kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return coverent::kExitInvalidInput;
  }
}
