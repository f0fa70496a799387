#include "coverent/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "coverent/errors.hpp"
#include "coverent/parallel.hpp"

namespace coverent {

std::string_view notion_name(Notion n) {
  switch (n) {
    case Notion::h_minus: return "h_minus";
    case Notion::h_plus: return "h_plus";
    case Notion::h_e: return "h_e";
    case Notion::h_c: return "h_c";
  }
  return "?";
}

Notion parse_notion(std::string_view name) {
  for (auto n : {Notion::h_minus, Notion::h_plus, Notion::h_e, Notion::h_c}) {
    if (notion_name(n) == name) return n;
  }
  throw InvalidInput("unknown notion '" + std::string(name) + "' (expected h_minus, h_plus, h_e or h_c)");
}

const TraceRecord& EntropyTrace::at(int n) const {
  for (const auto& r : records) {
    if (r.n == n) return r;
  }
  throw std::out_of_range("trace has no record for n = " + std::to_string(n));
}

namespace {

constexpr double kMonotoneSlack = 1e-12;

void check_horizon(int n_max) {
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");
}

// Fills estimate and monotone. `subadditive` selects the running-infimum
// policy for exact records.
void finish(EntropyTrace& t, bool subadditive) {
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    if (t.records[i].value > t.records[i - 1].value + kMonotoneSlack) t.monotone = false;
  }
  if (t.records.empty()) return;
  const auto& last = t.records.back();
  if (subadditive && last.method == Method::exact) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& r : t.records) {
      if (r.method == Method::exact) inf = std::min(inf, r.value);
    }
    t.estimate = inf;
  } else {
    t.estimate = last.value;
  }
}

// Runs step(n) for n = 1..n_max, turning capacity errors into a truncation
// or an error tagged with n.
template <class Step>
void run_steps(EntropyTrace& t, int n_max, const EstimatorConfig& cfg, Step step) {
  for (int n = 1; n <= n_max; ++n) {
    try {
      t.records.push_back(step(n));
    } catch (const CapacityError& e) {
      if (!cfg.allow_partial) throw CapacityError(e.what(), n);
      t.truncation = Truncation{n, e.what()};
      return;
    }
  }
}

double log2_count(std::size_t count) { return std::log2(static_cast<double>(count)); }

}  // namespace

EntropyTrace h_minus_trace(const ShiftMeasure& system, const Cover& u, int n_max, const EstimatorConfig& cfg) {
  check_horizon(n_max);
  EntropyTrace t;
  t.notion = Notion::h_minus;
  double running = std::numeric_limits<double>::infinity();
  run_steps(t, n_max, cfg, [&](int n) {
    const auto dj = dyn_join(u, n, cfg.join);
    const auto space = make_assignment_space(system, dj.cover, dj.cover.depth());
    TraceRecord r;
    r.n = n;
    std::optional<FreeSearchResult> best;
    if (space.free_atoms.size() <= cfg.assignment.max_free_words) {
      try {
        best = exact_free_search(space, cfg.assignment);
        r.method = Method::exact;
      } catch (const CapacityError&) {
      }
    }
    if (!best) {
      best = heuristic_free_search(space, derive_seed(cfg.seed, "h_minus", static_cast<std::uint64_t>(n)),
                                   cfg.restarts);
      r.method = Method::heuristic;
    }
    r.value = best->bits / n;
    if (r.method == Method::exact) running = std::min(running, r.value);
    r.aux = std::isfinite(running) ? running : r.value;
    return r;
  });
  finish(t, true);
  return t;
}

namespace {

// Entropies H(alpha_0^{n-1}) for n = 1..n_max of the partition that sends
// depth-D atom a to block[a].
class NameEntropy {
 public:
  NameEntropy(const ShiftMeasure& system, int depth, int n_max) : m_(system.alphabet_size()), depth_(depth) {
    for (int n = 1; n <= n_max; ++n) cylinders_.push_back(system.cylinder_measures(depth + n - 1));
  }

  std::vector<double> entropies(std::span<const std::uint32_t> block, std::uint32_t blocks) const {
    std::vector<double> h;
    h.reserve(cylinders_.size());
    std::vector<std::pair<std::uint64_t, double>> coded;
    std::vector<double> dense;
    const double log_blocks = std::log2(static_cast<double>(std::max<std::uint32_t>(blocks, 2)));
    for (std::size_t i = 0; i < cylinders_.size(); ++i) {
      const int n = static_cast<int>(i) + 1;
      if (log_blocks * n > 63) {
        throw CapacityError("h_plus: names over " + std::to_string(blocks) + " blocks at n = " + std::to_string(n) +
                            " do not fit a 64-bit code");
      }
      const auto& cyl = cylinders_[i];
      const AtomIndex window = atom_count(m_, depth_);
      const bool use_dense = log_blocks * n <= 22;
      if (use_dense) {
        dense.assign(static_cast<std::size_t>(std::pow(static_cast<double>(blocks), n)) + 1, 0.0);
      } else {
        coded.clear();
      }
      const AtomIndex shift_out = atom_count(m_, n - 1);  // weight of the leading symbol beyond the first window
      for (AtomIndex w = 0; w < cyl.size(); ++w) {
        if (cyl[w] <= 0.0) continue;
        // Windows of w left to right: window j = (w / M^{n-1-j}) mod M^D.
        std::uint64_t code = 0;
        AtomIndex scale = shift_out;
        for (int j = 0; j < n; ++j) {
          code = code * blocks + block[(w / scale) % window];
          scale = j + 1 < n ? scale / static_cast<AtomIndex>(m_) : 1;
        }
        if (use_dense) {
          dense[code] += cyl[w];
        } else {
          coded.emplace_back(code, cyl[w]);
        }
      }
      double bits = 0.0;
      if (use_dense) {
        for (double x : dense) bits += entropy_term(x);
      } else {
        std::sort(coded.begin(), coded.end());
        for (std::size_t a = 0; a < coded.size();) {
          double mass = 0.0;
          std::size_t b = a;
          for (; b < coded.size() && coded[b].first == coded[a].first; ++b) mass += coded[b].second;
          bits += entropy_term(mass);
          a = b;
        }
      }
      h.push_back(bits);
    }
    return h;
  }

 private:
  int m_;
  int depth_;
  std::vector<std::vector<double>> cylinders_;
};

// Compacted block labels of the full depth-D choice vector.
std::pair<std::vector<std::uint32_t>, std::uint32_t> block_labels(const AssignmentSpace& s,
                                                                  std::span<const std::uint32_t> free_choice) {
  std::vector<std::uint32_t> choice = s.base_choice;
  for (std::size_t t = 0; t < s.free_atoms.size(); ++t) choice[s.free_atoms[t]] = free_choice[t];
  std::vector<std::uint32_t> relabel(s.lifted.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : choice) {
    if (relabel[c] == UINT32_MAX) relabel[c] = next++;
    c = relabel[c];
  }
  return {std::move(choice), next};
}

struct PlusCandidateValues {
  std::vector<double> h;  // H(alpha_0^{n-1}), n = 1..n_max
};

}  // namespace

EntropyTrace h_plus_trace(const ShiftMeasure& system, const Cover& u, int n_max, int depth,
                          const EstimatorConfig& cfg) {
  check_horizon(n_max);
  if (depth < u.depth()) throw InvalidInput("h_plus depth must be at least the cover depth");
  EntropyTrace t;
  t.notion = Notion::h_plus;

  const auto space = make_assignment_space(system, u, depth);
  // Candidate free-choice vectors.
  std::vector<std::vector<std::uint32_t>> candidates;
  Method method = Method::exact;
  double total = 1.0;
  for (const auto& e : space.eligible) total *= static_cast<double>(e.size());
  if (total <= static_cast<double>(cfg.max_candidates)) {
    std::vector<std::size_t> digit(space.free_atoms.size(), 0);
    while (true) {
      std::vector<std::uint32_t> c(digit.size());
      for (std::size_t i = 0; i < digit.size(); ++i) c[i] = space.eligible[i][digit[i]];
      candidates.push_back(std::move(c));
      std::size_t i = digit.size();
      while (i > 0 && ++digit[i - 1] == space.eligible[i - 1].size()) digit[--i] = 0;
      if (i == 0) break;
    }
  } else {
    method = Method::heuristic;
    candidates.push_back(greedy_free_choice(space));
    candidates.push_back(heuristic_free_search(space, derive_seed(cfg.seed, "h_plus"), cfg.restarts).free_choice);
  }

  // Name entropies need depth D + n - 1 cylinders; find how far they fit.
  int reach = n_max;
  try {
    atom_count(system.alphabet_size(), depth + n_max - 1);
  } catch (const CapacityError& e) {
    reach = 0;
    while (reach < n_max) {
      try {
        atom_count(system.alphabet_size(), depth + reach);
      } catch (const CapacityError&) {
        break;
      }
      ++reach;
    }
    if (!cfg.allow_partial) throw CapacityError(e.what(), reach + 1);
    t.truncation = Truncation{reach + 1, e.what()};
  }

  if (reach > 0) {
    const NameEntropy names(system, depth, reach);
    std::vector<PlusCandidateValues> values(candidates.size());
    std::vector<std::string> failure(candidates.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(candidates.size()); ++c) {
      try {
        const auto [labels, blocks] = block_labels(space, candidates[c]);
        values[c].h = names.entropies(labels, blocks);
      } catch (const CapacityError& e) {
        failure[c] = e.what();
      }
    }
    for (const auto& f : failure) {
      if (!f.empty()) throw CapacityError(f);
    }
    for (int n = 1; n <= reach; ++n) {
      TraceRecord r;
      r.n = n;
      r.method = method;
      r.depth = depth;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : values) {
        const double cond = v.h[n - 1] - (n > 1 ? v.h[n - 2] : 0.0);
        if (cond < best) {
          best = cond;
          r.aux = v.h[n - 1] / n;
        }
      }
      r.value = std::max(0.0, best);
      t.records.push_back(r);
    }
  }
  finish(t, false);
  return t;
}

EntropyTrace h_e_trace(const ShiftMeasure& system, const Cover& u, double epsilon, int n_max,
                       const EstimatorConfig& cfg) {
  check_horizon(n_max);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  EntropyTrace t;
  t.notion = Notion::h_e;
  run_steps(t, n_max, cfg, [&](int n) {
    const auto dj = dyn_join(u, n, cfg.join);
    const auto inst = make_cover_instance(system, dj.cover, epsilon);
    std::optional<CoverSolution> sol;
    try {
      sol = n_exact(inst, cfg.setcover);
    } catch (const CapacityError&) {
      sol = n_local_search(inst);
    }
    TraceRecord r;
    r.n = n;
    r.method = sol->method;
    r.epsilon = epsilon;
    r.value = log2_count(sol->count) / n;
    r.aux = static_cast<double>(sol->count);
    return r;
  });
  finish(t, false);
  return t;
}

EntropyTrace h_c_trace(const Cover& u, int n_max, const EstimatorConfig& cfg) {
  check_horizon(n_max);
  EntropyTrace t;
  t.notion = Notion::h_c;
  run_steps(t, n_max, cfg, [&](int n) {
    const auto dj = dyn_join(u, n, cfg.join);
    const auto inst = make_full_cover_instance(dj.cover);
    std::optional<CoverSolution> sol;
    try {
      sol = n_exact(inst, cfg.setcover);
    } catch (const CapacityError&) {
      sol = n_local_search(inst);
    }
    TraceRecord r;
    r.n = n;
    r.method = sol->method;
    r.value = log2_count(sol->count) / n;
    r.aux = static_cast<double>(sol->count);
    return r;
  });
  finish(t, true);
  return t;
}

namespace {

double notion_value(const ShiftMeasure& system, const Cover& u, int n, Notion notion, int depth,
                    const EstimatorConfig& cfg) {
  switch (notion) {
    case Notion::h_minus: return h_minus_trace(system, u, n, cfg).at(n).value;
    case Notion::h_plus: return h_plus_trace(system, u, n, depth, cfg).at(n).value;
    default: throw InvalidInput("decompose supports h_minus and h_plus only");
  }
}

}  // namespace

Decomposition decompose(const MixtureSystem& mixture, const Cover& u, int n, Notion notion, int depth,
                        const EstimatorConfig& cfg) {
  if (notion != Notion::h_minus && notion != Notion::h_plus) {
    throw InvalidInput("decompose supports h_minus and h_plus only");
  }
  if (notion == Notion::h_plus && depth == 0) depth = u.depth();
  Decomposition d;
  d.n = n;
  d.mixture_value = notion_value(ShiftMeasure(mixture), u, n, notion, depth, cfg);
  for (std::size_t i = 0; i < mixture.components().size(); ++i) {
    const double v = notion_value(ShiftMeasure(mixture.components()[i]), u, n, notion, depth, cfg);
    d.component_values.push_back(v);
    d.weighted_sum += mixture.weights()[i] * v;
  }
  d.gap = d.mixture_value - d.weighted_sum;
  return d;
}

Cover block_cover(const Cover& u, int m) {
  if (m < 1) throw InvalidInput("block length must be >= 1");
  const int big = static_cast<int>(atom_count(u.alphabet_size(), m));
  if (big > 10) throw InvalidInput("block alphabet M^m must not exceed 10 symbols");
  const auto joined = dyn_join(u, m).cover;
  const int depth = (joined.depth() + m - 1) / m;
  const auto lifted = lift_depth(joined, depth * m);
  std::vector<WordSet> elements;
  elements.reserve(lifted.size());
  for (const auto& e : lifted.elements()) {
    elements.emplace_back(big, depth, std::vector<AtomIndex>(e.members().begin(), e.members().end()));
  }
  return Cover(big, depth, std::move(elements));
}

}  // namespace coverent
