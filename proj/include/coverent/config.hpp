#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coverent/cover.hpp"
#include "coverent/errors.hpp"
#include "coverent/estimators.hpp"
#include "coverent/markov.hpp"

namespace coverent {

// Bad configuration; the message names the field and the reason.
class ConfigError : public InvalidInput {
 public:
  ConfigError(const std::string& field, const std::string& reason)
      : InvalidInput("config field '" + field + "': " + reason), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::optional<ShiftMeasure> system;
  std::optional<Cover> cover;
  std::vector<Notion> estimators{Notion::h_minus, Notion::h_plus, Notion::h_e, Notion::h_c};
  int n_max = 8;
  std::vector<double> epsilons{0.25};
  int depth = 0;  // h_plus assignment depth; 0 means the cover depth
  std::uint64_t seed = 0;
  EstimatorConfig budgets;
  std::string output = "coverent-out";
  std::vector<int> decompose_n;  // horizons for the decompose subcommand
  Notion decompose_notion = Notion::h_minus;
};

// Relative file references inside the document resolve against base_dir.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

// Range checks that also apply after command-line overrides.
void check_config(const ExperimentConfig& cfg);

// Accepted fields with examples, as printed by --print-schema.
std::string config_schema();

}  // namespace coverent
