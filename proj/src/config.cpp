#include "coverent/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coverent {
namespace {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path, const std::string& field) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(field, "cannot read file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("not valid JSON: ") + e.what());
  }
}

const json& need(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(field + "." + key, "missing");
  return obj.at(key);
}

double as_double(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<double> as_doubles(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

// Follows {"file": "..."} indirections.
json resolve(const json& node, std::filesystem::path& base, const std::string& field) {
  if (node.is_object() && node.contains("file")) {
    if (!node.at("file").is_string()) throw ConfigError(field + ".file", "expected a path string");
    auto path = base / node.at("file").get<std::string>();
    base = path.parent_path();
    return parse_json(read_text(path, field + ".file"), field + ".file");
  }
  return node;
}

MarkovSystem parse_markov(const json& node, const std::string& field) {
  const auto type = need(node, "type", field);
  if (!type.is_string()) throw ConfigError(field + ".type", "expected a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "bernoulli") return MarkovSystem::bernoulli(as_doubles(need(node, "probs", field), field + ".probs"));
    if (t == "markov") {
      const auto& m = need(node, "matrix", field);
      if (!m.is_array()) throw ConfigError(field + ".matrix", "expected an array of rows");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < m.size(); ++i) {
        rows.push_back(as_doubles(m[i], field + ".matrix[" + std::to_string(i) + "]"));
      }
      if (node.contains("stationary")) {
        // An explicit stationary vector is the route for periodic chains,
        // whose stationary law the power iteration does not settle on.
        std::vector<double> flat;
        for (const auto& r : rows) {
          if (r.size() != rows.size()) throw ConfigError(field + ".matrix", "matrix must be square");
          flat.insert(flat.end(), r.begin(), r.end());
        }
        return MarkovSystem(static_cast<int>(rows.size()), std::move(flat),
                            as_doubles(node.at("stationary"), field + ".stationary"));
      }
      return MarkovSystem::from_matrix(rows);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".type", "expected \"bernoulli\", \"markov\" or \"mixture\", got \"" + t + "\"");
}

ShiftMeasure parse_system(const json& raw, std::filesystem::path base, const std::string& field) {
  const auto node = resolve(raw, base, field);
  if (!node.is_object()) throw ConfigError(field, "expected an object");
  if (node.contains("type") && node.at("type") == "mixture") {
    const auto& comps = need(node, "components", field);
    if (!comps.is_array() || comps.empty()) throw ConfigError(field + ".components", "expected a nonempty array");
    std::vector<MarkovSystem> systems;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const auto f = field + ".components[" + std::to_string(i) + "]";
      auto sub_base = base;
      systems.push_back(parse_markov(resolve(comps[i], sub_base, f), f));
    }
    auto weights = as_doubles(need(node, "weights", field), field + ".weights");
    try {
      return MixtureSystem(std::move(systems), std::move(weights));
    } catch (const InvalidInput& e) {
      throw ConfigError(field, e.what());
    }
  }
  return parse_markov(node, field);
}

Cover parse_cover(const json& raw, std::filesystem::path base, int alphabet, const std::string& field) {
  const auto node = resolve(raw, base, field);
  if (!node.is_object()) throw ConfigError(field, "expected an object");
  if (node.contains("kind")) {
    const auto kind = node.at("kind").is_string() ? node.at("kind").get<std::string>() : "";
    const int depth = node.contains("depth") ? static_cast<int>(as_int(node.at("depth"), field + ".depth")) : 1;
    if (depth < 1) throw ConfigError(field + ".depth", "must be >= 1");
    if (kind == "generating") return Cover::cylinders(alphabet, depth);
    if (kind == "trivial") return Cover::trivial(alphabet, depth);
    throw ConfigError(field + ".kind", "expected \"generating\" or \"trivial\"");
  }
  const auto depth = as_int(need(node, "depth", field), field + ".depth");
  if (depth < 1) throw ConfigError(field + ".depth", "must be >= 1");
  const auto& elements = need(node, "elements", field);
  if (!elements.is_array() || elements.empty()) throw ConfigError(field + ".elements", "expected a nonempty array");
  std::vector<WordSet> sets;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto fi = field + ".elements[" + std::to_string(i) + "]";
    if (!elements[i].is_array()) throw ConfigError(fi, "expected an array of word strings");
    std::vector<Word> words;
    for (std::size_t j = 0; j < elements[i].size(); ++j) {
      const auto fj = fi + "[" + std::to_string(j) + "]";
      if (!elements[i][j].is_string()) throw ConfigError(fj, "expected a word string");
      const auto text = elements[i][j].get<std::string>();
      Word w;
      try {
        w = parse_word(text, alphabet);
      } catch (const InvalidInput& e) {
        throw ConfigError(fj, e.what());
      }
      if (static_cast<std::int64_t>(w.depth()) != depth) {
        throw ConfigError(fj, "word \"" + text + "\" does not have depth " + std::to_string(depth));
      }
      words.push_back(std::move(w));
    }
    sets.push_back(WordSet::from_words(alphabet, static_cast<int>(depth), words));
  }
  try {
    return Cover(alphabet, static_cast<int>(depth), std::move(sets));
  } catch (const InvalidInput& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

void check_config(const ExperimentConfig& cfg) {
  if (cfg.n_max < 1) throw ConfigError("n_max", "must be >= 1");
  for (double e : cfg.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilon", "every value must lie in (0, 1)");
  }
  if (cfg.depth < 0) throw ConfigError("depth", "must be >= 0");
  if (cfg.cover && cfg.depth != 0 && cfg.depth < cfg.cover->depth()) {
    throw ConfigError("depth", "must be at least the cover depth " + std::to_string(cfg.cover->depth()));
  }
  if (cfg.budgets.restarts < 1) throw ConfigError("budgets.restarts", "must be >= 1");
  for (int n : cfg.decompose_n) {
    if (n < 1) throw ConfigError("decompose.n", "horizons must be >= 1");
  }
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const auto doc = parse_json(std::string(text), "<root>");
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  ExperimentConfig cfg;
  if (doc.contains("system")) cfg.system = parse_system(doc.at("system"), base_dir, "system");
  if (doc.contains("cover")) {
    if (!cfg.system) throw ConfigError("cover", "needs a system to fix the alphabet");
    cfg.cover = parse_cover(doc.at("cover"), base_dir, cfg.system->alphabet_size(), "cover");
  }
  if (doc.contains("estimators")) {
    const auto& e = doc.at("estimators");
    if (!e.is_array()) throw ConfigError("estimators", "expected an array of notion names");
    cfg.estimators.clear();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto f = "estimators[" + std::to_string(i) + "]";
      if (!e[i].is_string()) throw ConfigError(f, "expected a string");
      try {
        cfg.estimators.push_back(parse_notion(e[i].get<std::string>()));
      } catch (const InvalidInput& ex) {
        throw ConfigError(f, ex.what());
      }
    }
  }
  if (doc.contains("n_max")) cfg.n_max = static_cast<int>(as_int(doc.at("n_max"), "n_max"));
  if (doc.contains("epsilon")) {
    const auto& e = doc.at("epsilon");
    cfg.epsilons = e.is_array() ? as_doubles(e, "epsilon") : std::vector<double>{as_double(e, "epsilon")};
  }
  if (doc.contains("depth")) cfg.depth = static_cast<int>(as_int(doc.at("depth"), "depth"));
  if (doc.contains("seed")) {
    const auto& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed", "expected a nonnegative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("budgets")) {
    const auto& b = doc.at("budgets");
    if (!b.is_object()) throw ConfigError("budgets", "expected an object");
    auto positive = [&](const char* key) {
      const auto v = as_int(b.at(key), std::string("budgets.") + key);
      if (v < 1) throw ConfigError(std::string("budgets.") + key, "must be >= 1");
      return static_cast<std::uint64_t>(v);
    };
    for (const auto& [key, value] : b.items()) {
      (void)value;
      if (key == "exact_node_budget") {
        cfg.budgets.assignment.max_nodes = positive("exact_node_budget");
        cfg.budgets.setcover.max_nodes = cfg.budgets.assignment.max_nodes;
      } else if (key == "max_free_words") {
        cfg.budgets.assignment.max_free_words = positive("max_free_words");
      } else if (key == "max_sets") {
        cfg.budgets.setcover.max_sets = positive("max_sets");
      } else if (key == "max_candidate_names") {
        cfg.budgets.join.max_candidate_names = positive("max_candidate_names");
      } else if (key == "max_incidences") {
        cfg.budgets.join.max_incidences = positive("max_incidences");
      } else if (key == "max_candidates") {
        cfg.budgets.max_candidates = positive("max_candidates");
      } else if (key == "restarts") {
        cfg.budgets.restarts = static_cast<int>(positive("restarts"));
      } else {
        throw ConfigError("budgets." + key, "unknown budget");
      }
    }
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ConfigError("output", "expected a directory path");
    cfg.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("decompose")) {
    const auto& d = doc.at("decompose");
    if (!d.is_object()) throw ConfigError("decompose", "expected an object");
    if (d.contains("n")) {
      for (double x : as_doubles(d.at("n"), "decompose.n")) cfg.decompose_n.push_back(static_cast<int>(x));
    }
    if (d.contains("notion")) {
      try {
        cfg.decompose_notion = parse_notion(d.at("notion").get<std::string>());
      } catch (const std::exception& e) {
        throw ConfigError("decompose.notion", e.what());
      }
    }
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    static const char* known[] = {"system", "cover", "estimators", "n_max", "epsilon", "depth",
                                  "seed",   "budgets", "output",   "decompose"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError(key, "unknown field");
    }
  }
  check_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path, "<file>"), path.parent_path().empty() ? "." : path.parent_path());
}

std::string config_schema() {
  return R"({
  "system":     object, required. One of
                  {"type": "bernoulli", "probs": [0.5, 0.5]}
                  {"type": "markov", "matrix": [[0.9, 0.1], [0.5, 0.5]]}
                  {"type": "markov", "matrix": [[0, 1], [1, 0]], "stationary": [0.5, 0.5]}
                  {"type": "mixture", "weights": [0.5, 0.5], "components": [<bernoulli|markov>, ...]}
                  {"file": "system.json"}
                Words are digit strings over symbols 0..M-1, so M <= 10.
  "cover":      object, required. One of
                  {"kind": "generating"}               time-zero partition into symbols
                  {"kind": "trivial"}                  the one-element cover {X}
                  {"depth": 2, "elements": [["00", "01", "10"], ["01", "10", "11"]]}
                  {"file": "cover.json"}
                Elements must jointly contain every word of the given depth.
  "estimators": array of "h_minus" | "h_plus" | "h_e" | "h_c"; default all four.
  "n_max":      integer >= 1; default 8.
  "epsilon":    number or array of numbers in (0, 1), used by h_e; default [0.25].
  "depth":      integer, h_plus assignment depth; 0 (default) means the cover depth.
  "seed":       nonnegative integer; default 0. All randomness derives from it.
  "budgets":    object, all optional:
                  "exact_node_budget"   branch-and-bound nodes for exact searches
                  "max_free_words"      multi-covered words allowed in exact assignment search (20)
                  "max_sets"            set-cover sets after reduction (4096)
                  "max_candidate_names" |U|^n limit for the dynamical join (16777216)
                  "max_incidences"      name/word incidences in the dynamical join (134217728)
                  "max_candidates"      h_plus assignments enumerated exactly (4096)
                  "restarts"            heuristic restarts (8)
  "output":     directory for CSV reports; default "coverent-out".
  "decompose":  {"n": [4, 8, 12], "notion": "h_minus" | "h_plus"}, used by the decompose subcommand;
                the system must then be a mixture.
}

Example:
{
  "system": {"type": "markov", "matrix": [[0.9, 0.1], [0.5, 0.5]]},
  "cover": {"kind": "generating"},
  "estimators": ["h_minus", "h_plus", "h_e"],
  "n_max": 12,
  "epsilon": [0.25],
  "seed": 7,
  "output": "markov-run"
}
)";
}

}  // namespace coverent
