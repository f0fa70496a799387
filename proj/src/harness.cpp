#include "coverent/harness.hpp"

#include <cmath>
#include <fstream>

#include "coverent/csv.hpp"
#include "coverent/errors.hpp"
#include "coverent/verify.hpp"

namespace coverent {
namespace {

void require_model(const ExperimentConfig& cfg) {
  if (!cfg.system) throw ConfigError("system", "missing");
  if (!cfg.cover) throw ConfigError("cover", "missing");
}

std::string trace_file_name(const EntropyTrace& t, std::optional<double> eps, std::optional<int> depth) {
  std::string name(notion_name(t.notion));
  if (eps) name += "_eps" + format_value(*eps);
  if (depth) name += "_D" + std::to_string(*depth);
  return name + ".csv";
}

}  // namespace

int run_entropy(const ExperimentConfig& cfg, std::ostream& log) {
  require_model(cfg);
  check_config(cfg);
  const auto& system = *cfg.system;
  const auto& cover = *cfg.cover;
  auto est = cfg.budgets;
  est.seed = cfg.seed;
  est.allow_partial = true;
  const int depth = cfg.depth ? cfg.depth : cover.depth();

  struct Run {
    EntropyTrace trace;
    std::optional<double> eps;
    std::optional<int> depth;
  };
  std::vector<Run> runs;
  for (auto notion : cfg.estimators) {
    switch (notion) {
      case Notion::h_minus: runs.push_back({h_minus_trace(system, cover, cfg.n_max, est), {}, {}}); break;
      case Notion::h_plus:
        runs.push_back({h_plus_trace(system, cover, cfg.n_max, depth, est), {}, depth});
        break;
      case Notion::h_e:
        for (double e : cfg.epsilons) runs.push_back({h_e_trace(system, cover, e, cfg.n_max, est), e, {}});
        break;
      case Notion::h_c: runs.push_back({h_c_trace(cover, cfg.n_max, est), {}, {}}); break;
    }
  }

  const std::filesystem::path dir(cfg.output);
  std::filesystem::create_directories(dir);
  CsvTable summary{{"notion", "epsilon", "depth", "n", "estimate", "method", "monotone", "truncated_at"}, {}};
  bool truncated = false;
  for (const auto& r : runs) {
    write_csv_file(dir / trace_file_name(r.trace, r.eps, r.depth), trace_table(r.trace));
    std::string n, method;
    if (!r.trace.records.empty()) {
      n = std::to_string(r.trace.records.back().n);
      method = method_name(r.trace.records.back().method);
    }
    std::string cut;
    if (r.trace.truncation) {
      truncated = true;
      cut = std::to_string(r.trace.truncation->at_n);
      log << notion_name(r.trace.notion) << " truncated at n = " << cut << ": " << r.trace.truncation->reason << "\n";
    }
    summary.rows.push_back({std::string(notion_name(r.trace.notion)), r.eps ? format_value(*r.eps) : "",
                            r.depth ? std::to_string(*r.depth) : "", n,
                            r.trace.records.empty() ? "" : format_value(r.trace.estimate), method,
                            r.trace.monotone ? "1" : "0", cut});
  }
  write_csv_file(dir / "summary.csv", summary);
  return truncated ? kExitBudget : kExitOk;
}

int run_verify(std::string_view suite, std::uint64_t seed, int instances, const std::filesystem::path& report_path,
               std::ostream& out) {
  const auto report = run_verify_suite(suite, seed, instances);
  out << report.text;
  if (!report_path.empty()) {
    if (report_path.has_parent_path()) std::filesystem::create_directories(report_path.parent_path());
    std::ofstream f(report_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + report_path.string());
    f << report.text;
  }
  return report.passed() ? kExitOk : kExitPropertyFailure;
}

int run_census(const CensusRequest& req, std::ostream& out) {
  if (req.alphabet < 2 || req.alphabet > 10) throw InvalidInput("census alphabet size must lie in [2, 10]");
  if (req.n < 1) throw InvalidInput("census block length n must be >= 1");
  if (req.k_max < req.k_min) throw InvalidInput("census needs k_min <= k_max");
  if (req.deltas.empty()) throw InvalidInput("census needs at least one delta");
  for (double d : req.deltas) {
    if (!(d > 0.0 && d < 1.0)) throw InvalidInput("census delta must lie in (0, 1)");
  }
  std::vector<double> mu = req.mu;
  const auto blocks = atom_count(req.alphabet, req.n);
  if (mu.empty()) mu.assign(blocks, 1.0 / static_cast<double>(blocks));

  CsvTable t{{"k", "delta", "exact_count", "bound", "ratio"}, {}};
  bool breached = false;
  for (int k = std::max(req.k_min, req.n); k <= req.k_max; ++k) {
    for (double d : req.deltas) {
      try {
        const auto c = packing_census(req.alphabet, req.n, k, d, mu, req.budget);
        t.rows.push_back({std::to_string(k), format_value(d), std::to_string(c.count), format_value(c.bound),
                          format_value(static_cast<double>(c.count) / c.bound)});
      } catch (const CapacityError&) {
        breached = true;
        const double h0 = average_block_entropy(mu, req.n);
        const double bound = std::exp2(k * (h0 + packing_phi(mu, req.n, req.alphabet, d)));
        t.rows.push_back({std::to_string(k), format_value(d), "over_budget", format_value(bound), ""});
      }
    }
  }
  out << to_csv(t);
  if (!req.output.empty()) {
    std::filesystem::create_directories(req.output);
    write_csv_file(req.output / "census.csv", t);
  }
  return breached ? kExitBudget : kExitOk;
}

int run_decompose(const ExperimentConfig& cfg, std::ostream& log) {
  require_model(cfg);
  if (!cfg.system->is_mixture()) throw ConfigError("system", "decompose needs a mixture system");
  auto est = cfg.budgets;
  est.seed = cfg.seed;
  const std::vector<int> horizons = cfg.decompose_n.empty() ? std::vector<int>{cfg.n_max} : cfg.decompose_n;
  const int depth = cfg.depth ? cfg.depth : cfg.cover->depth();
  const auto& mix = cfg.system->mixture();

  CsvTable t{{"n", "notion", "mixture_value", "weighted_sum", "gap"}, {}};
  for (std::size_t c = 0; c < mix.components().size(); ++c) t.header.push_back("component_" + std::to_string(c));
  for (int n : horizons) {
    Decomposition d;
    try {
      d = decompose(mix, *cfg.cover, n, cfg.decompose_notion, depth, est);
    } catch (const CapacityError& e) {
      log << "decompose stopped at n = " << n << ": " << e.what() << "\n";
      std::filesystem::create_directories(cfg.output);
      std::vector<std::string> row{std::to_string(n), "truncated", "", "", ""};
      row.resize(t.header.size());
      t.rows.push_back(std::move(row));
      write_csv_file(std::filesystem::path(cfg.output) / "decompose.csv", t);
      return kExitBudget;
    }
    std::vector<std::string> row{std::to_string(n), std::string(notion_name(cfg.decompose_notion)),
                                 format_value(d.mixture_value), format_value(d.weighted_sum), format_value(d.gap)};
    for (double v : d.component_values) row.push_back(format_value(v));
    t.rows.push_back(std::move(row));
  }
  std::filesystem::create_directories(cfg.output);
  write_csv_file(std::filesystem::path(cfg.output) / "decompose.csv", t);
  return kExitOk;
}

}  // namespace coverent
