#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treembed/graph.hpp"
#include "treembed/io.hpp"
#include "treembed/pipeline.hpp"
#include "treembed/rng.hpp"
#include "treembed/tree.hpp"

namespace treembed {

// Which tree each trial embeds. random/random-bounded draw a fresh tree per
// trial from the trial's seed stream; comb/tndelta/path are deterministic
// families; file loads a fixed tree once.
struct TreeSpec {
  enum class Kind { random, random_bounded, comb, tndelta, path, file };
  Kind kind = Kind::random;
  int delta = 0;      // random-bounded / tndelta only
  std::string file;   // file kind only
};

inline const char* to_string(TreeSpec::Kind k) {
  switch (k) {
    case TreeSpec::Kind::random: return "random";
    case TreeSpec::Kind::random_bounded: return "random-bounded";
    case TreeSpec::Kind::comb: return "comb";
    case TreeSpec::Kind::tndelta: return "tndelta";
    case TreeSpec::Kind::path: return "path";
    case TreeSpec::Kind::file: return "file";
  }
  return "?";
}

inline Tree make_tree(const TreeSpec& spec, int n, std::uint64_t seed) {
  switch (spec.kind) {
    case TreeSpec::Kind::random: return random_tree(n, seed);
    case TreeSpec::Kind::random_bounded: return random_bounded_degree_tree(n, spec.delta, seed);
    case TreeSpec::Kind::comb: return comb_tree(n);
    case TreeSpec::Kind::tndelta: return t_n_delta(n, spec.delta);
    case TreeSpec::Kind::path: {
      std::vector<std::pair<int, int>> edges;
      edges.reserve(n > 0 ? n - 1 : 0);
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      return tree_from_edges(n, edges);
    }
    case TreeSpec::Kind::file: {
      std::ifstream in(spec.file);
      if (!in) throw std::runtime_error("make_tree: cannot open tree file " + spec.file);
      Tree t = read_tree(in);
      if (t.n != n) {
        throw std::runtime_error("make_tree: tree file has " + std::to_string(t.n) +
                                 " vertices, config says " + std::to_string(n));
      }
      return t;
    }
  }
  throw std::logic_error("make_tree: unhandled kind");
}

struct ExperimentConfig {
  TreeSpec tree;
  int n = 0;
  double epsilon = 0.5;
  std::vector<double> p_values;  // sweeps are expanded at parse time
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::string output;  // CSV destination ("" or "-" = stdout at the CLI)
};

// One pipeline run. The record alone re-derives the trial: the seed column
// is the exact per-trial seed, and (n, delta, p) pin the inputs.
struct TrialRecord {
  int n = 0;
  int delta = 0;  // max degree of the tree actually embedded
  double p = 0.0;
  double p_prime = 0.0;
  std::uint64_t seed = 0;
  int case_taken = 0;
  bool success = false;
  std::string failed_phase;  // "" on success, else forest|stars|paths|decomposition
  std::int64_t millis = 0;
};

inline std::string csv_header() { return "n,delta,p,p_prime,seed,case,success,failed_phase,millis"; }

inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << csv_header() << '\n';
  for (const auto& r : records) {
    os << r.n << ',' << r.delta << ',' << format_double(r.p) << ',' << format_double(r.p_prime)
       << ',' << r.seed << ',' << r.case_taken << ',' << (r.success ? 1 : 0) << ','
       << r.failed_phase << ',' << r.millis << '\n';
  }
}

namespace detail {

inline std::uint64_t trial_seed(std::uint64_t master, int point_index, int trial_index) {
  return Rng::from_seed(master)
      .split("point")
      .split(static_cast<std::uint64_t>(point_index))
      .split("trial")
      .split(static_cast<std::uint64_t>(trial_index))
      .key;
}

}  // namespace detail

// Runs one embedding trial at edge probability p. Deterministic given
// (config, point_index, trial_index): every random object derives from the
// per-trial seed, never from global state — which is what makes the
// multi-threaded experiment runner reproducible at any thread count.
inline TrialRecord run_single_trial(const ExperimentConfig& cfg, int point_index,
                                    int trial_index, double p) {
  const std::uint64_t seed = detail::trial_seed(cfg.master_seed, point_index, trial_index);
  const Rng root = Rng::from_seed(seed);

  const Tree t = make_tree(cfg.tree, cfg.n, root.split("tree").key);
  const TwoRoundGraph host = gnp_two_round(cfg.n, p, root.split("host").key);
  const PipelineParams params = PipelineParams::from_epsilon(cfg.epsilon);

  TrialRecord rec;
  rec.n = cfg.n;
  rec.delta = t.max_degree();
  rec.p = p;
  rec.p_prime = host.p_prime;
  rec.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  const PipelineReport rep = embed_spanning_tree(t, host, params, root.split("pipeline").key);
  const auto t1 = std::chrono::steady_clock::now();
  rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  rec.case_taken = rep.case_taken;
  rec.success = rep.success;
  // Empty on success, by the CSV contract.
  rec.failed_phase = rep.success ? "" : to_string(rep.failed_phase);
  return rec;
}

// Full sweep: |p_values| x trials runs. Records land in (point, trial) order
// regardless of how many worker threads execute them or in what order they
// finish — each job writes only its own preallocated slot.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, int threads = 1) {
  if (cfg.p_values.empty()) throw std::invalid_argument("run_experiment: no p values");
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  const int points = static_cast<int>(cfg.p_values.size());
  const std::size_t jobs = static_cast<std::size_t>(points) * cfg.trials;
  std::vector<TrialRecord> records(jobs);

  auto run_job = [&](std::size_t job) {
    const int pi = static_cast<int>(job) / cfg.trials;
    const int ti = static_cast<int>(job) % cfg.trials;
    records[job] = run_single_trial(cfg, pi, ti, cfg.p_values[pi]);
  };

  if (threads <= 1) {
    for (std::size_t job = 0; job < jobs; ++job) run_job(job);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t job = next.fetch_add(1);
        if (job >= jobs) return;
        run_job(job);
      }
    });
  }
  for (auto& th : pool) th.join();
  return records;
}

struct ThresholdProbe {
  double p = 0.0;
  int trials = 0;
  int successes = 0;
  double rate() const { return trials > 0 ? static_cast<double>(successes) / trials : 0.0; }
};

struct ThresholdEstimate {
  double p_low = 0.0;   // final bracket: rate(p_low) < target <= rate(p_high)
  double p_high = 0.0;
  double estimate = 0.0;  // geometric midpoint of the final bracket
  std::vector<ThresholdProbe> probes;  // in evaluation order
};

// Geometric bisection for the p where the success rate of `trial_fn`
// crosses `target`. trial_fn(p, seed) runs one trial; seeds derive from
// (master_seed, probe index, trial index), so the estimate is deterministic.
// Stops when p_high/p_low <= 1 + rel_width.
template <class TrialFn>
ThresholdEstimate estimate_threshold_fn(TrialFn&& trial_fn, double p_low, double p_high,
                                        int trials, double target, std::uint64_t master_seed,
                                        double rel_width = 0.10) {
  if (!(p_low > 0.0 && p_high <= 1.0 && p_low < p_high)) {
    throw std::invalid_argument("estimate_threshold: need 0 < p_low < p_high <= 1");
  }
  if (trials < 1) throw std::invalid_argument("estimate_threshold: trials must be >= 1");
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("estimate_threshold: target rate must lie in (0, 1)");
  }
  ThresholdEstimate est;
  int probe_index = 0;
  auto rate_at = [&](double p) {
    ThresholdProbe probe;
    probe.p = p;
    probe.trials = trials;
    const Rng probe_rng = Rng::from_seed(master_seed).split("probe").split(probe_index++);
    for (int i = 0; i < trials; ++i) {
      probe.successes += trial_fn(p, probe_rng.split(static_cast<std::uint64_t>(i)).key) ? 1 : 0;
    }
    est.probes.push_back(probe);
    return probe.rate();
  };

  if (rate_at(p_low) >= target) {
    throw std::runtime_error("estimate_threshold: success rate at p_low already meets the target");
  }
  if (rate_at(p_high) < target) {
    throw std::runtime_error("estimate_threshold: success rate at p_high is below the target");
  }
  while (p_high / p_low > 1.0 + rel_width) {
    const double mid = std::sqrt(p_low * p_high);
    if (rate_at(mid) >= target) {
      p_high = mid;
    } else {
      p_low = mid;
    }
  }
  est.p_low = p_low;
  est.p_high = p_high;
  est.estimate = std::sqrt(p_low * p_high);
  return est;
}

// Threshold of the full pipeline under a config: brackets at the extremes of
// the config's p list, trials per probe from the config.
inline ThresholdEstimate estimate_threshold(const ExperimentConfig& cfg, double target) {
  if (cfg.p_values.size() < 2) {
    throw std::invalid_argument("estimate_threshold: config must provide at least two p values");
  }
  const auto [lo_it, hi_it] = std::minmax_element(cfg.p_values.begin(), cfg.p_values.end());
  ExperimentConfig probe_cfg = cfg;  // reuse tree/n/epsilon fields
  auto trial = [&probe_cfg](double p, std::uint64_t seed) {
    const Rng root = Rng::from_seed(seed);
    const Tree t = make_tree(probe_cfg.tree, probe_cfg.n, root.split("tree").key);
    const TwoRoundGraph host = gnp_two_round(probe_cfg.n, p, root.split("host").key);
    const PipelineParams params = PipelineParams::from_epsilon(probe_cfg.epsilon);
    return embed_spanning_tree(t, host, params, root.split("pipeline").key).success;
  };
  return estimate_threshold_fn(trial, *lo_it, *hi_it, cfg.trials, target, cfg.master_seed);
}

// --- config file -----------------------------------------------------------
// Single JSON document; unknown keys are errors at every level (config typos
// must fail loudly, not silently run a default).

namespace detail {

inline TreeSpec parse_tree_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("config: \"tree\" must be an object");
  TreeSpec ts;
  bool saw_kind = false, saw_delta = false, saw_file = false;
  for (const auto& [key, val] : j.items()) {
    if (key == "kind") {
      const std::string k = val.get<std::string>();
      if (k == "random") ts.kind = TreeSpec::Kind::random;
      else if (k == "random-bounded") ts.kind = TreeSpec::Kind::random_bounded;
      else if (k == "comb") ts.kind = TreeSpec::Kind::comb;
      else if (k == "tndelta") ts.kind = TreeSpec::Kind::tndelta;
      else if (k == "path") ts.kind = TreeSpec::Kind::path;
      else if (k == "file") ts.kind = TreeSpec::Kind::file;
      else throw std::runtime_error("config: unknown tree kind \"" + k + "\"");
      saw_kind = true;
    } else if (key == "delta") {
      ts.delta = val.get<int>();
      saw_delta = true;
    } else if (key == "file") {
      ts.file = val.get<std::string>();
      saw_file = true;
    } else {
      throw std::runtime_error("config: unknown key tree." + key);
    }
  }
  if (!saw_kind) throw std::runtime_error("config: tree.kind is required");
  const bool needs_delta =
      ts.kind == TreeSpec::Kind::random_bounded || ts.kind == TreeSpec::Kind::tndelta;
  if (needs_delta && !saw_delta) {
    throw std::runtime_error("config: tree.delta is required for this tree kind");
  }
  if (!needs_delta && saw_delta) {
    throw std::runtime_error("config: tree.delta is only valid for random-bounded/tndelta");
  }
  if (ts.kind == TreeSpec::Kind::file && !saw_file) {
    throw std::runtime_error("config: tree.file is required for kind \"file\"");
  }
  if (ts.kind != TreeSpec::Kind::file && saw_file) {
    throw std::runtime_error("config: tree.file is only valid for kind \"file\"");
  }
  return ts;
}

inline std::vector<double> expand_sweep(const nlohmann::json& j) {
  double from = 0, to = 0;
  int points = 0;
  bool geometric = true;
  bool saw_from = false, saw_to = false, saw_points = false;
  for (const auto& [key, val] : j.items()) {
    if (key == "from") {
      from = val.get<double>();
      saw_from = true;
    } else if (key == "to") {
      to = val.get<double>();
      saw_to = true;
    } else if (key == "points") {
      points = val.get<int>();
      saw_points = true;
    } else if (key == "scale") {
      const std::string s = val.get<std::string>();
      if (s == "geometric") geometric = true;
      else if (s == "linear") geometric = false;
      else throw std::runtime_error("config: p_sweep.scale must be \"geometric\" or \"linear\"");
    } else {
      throw std::runtime_error("config: unknown key p_sweep." + key);
    }
  }
  if (!saw_from || !saw_to || !saw_points) {
    throw std::runtime_error("config: p_sweep needs from, to, points");
  }
  if (points < 1) throw std::runtime_error("config: p_sweep.points must be >= 1");
  if (geometric && !(from > 0.0)) {
    throw std::runtime_error("config: geometric p_sweep needs from > 0");
  }
  std::vector<double> ps;
  ps.reserve(points);
  if (points == 1) {
    ps.push_back(from);
    return ps;
  }
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    ps.push_back(geometric ? from * std::pow(to / from, f) : from + (to - from) * f);
  }
  return ps;
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::runtime_error("config: top level must be a JSON object");
  ExperimentConfig cfg;
  bool saw_tree = false, saw_n = false, saw_eps = false, saw_trials = false;
  bool saw_pv = false, saw_sweep = false;
  for (const auto& [key, val] : j.items()) {
    if (key == "tree") {
      cfg.tree = detail::parse_tree_spec(val);
      saw_tree = true;
    } else if (key == "n") {
      cfg.n = val.get<int>();
      saw_n = true;
    } else if (key == "epsilon") {
      cfg.epsilon = val.get<double>();
      saw_eps = true;
    } else if (key == "p_values") {
      cfg.p_values = val.get<std::vector<double>>();
      saw_pv = true;
    } else if (key == "p_sweep") {
      cfg.p_values = detail::expand_sweep(val);
      saw_sweep = true;
    } else if (key == "trials") {
      cfg.trials = val.get<int>();
      saw_trials = true;
    } else if (key == "master_seed") {
      cfg.master_seed = val.get<std::uint64_t>();
    } else if (key == "output") {
      cfg.output = val.get<std::string>();
    } else {
      throw std::runtime_error("config: unknown key " + key);
    }
  }
  if (!saw_tree) throw std::runtime_error("config: \"tree\" is required");
  if (!saw_n) throw std::runtime_error("config: \"n\" is required");
  if (!saw_eps) throw std::runtime_error("config: \"epsilon\" is required");
  if (!saw_trials) throw std::runtime_error("config: \"trials\" is required");
  if (saw_pv == saw_sweep) {
    throw std::runtime_error("config: exactly one of p_values / p_sweep is required");
  }
  if (cfg.n < 2) throw std::runtime_error("config: n must be >= 2");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw std::runtime_error("config: epsilon must lie in (0, 1)");
  }
  if (cfg.trials < 1) throw std::runtime_error("config: trials must be >= 1");
  if (cfg.p_values.empty()) throw std::runtime_error("config: empty p list");
  for (double p : cfg.p_values) {
    if (!(p > 0.0 && p <= 1.0)) throw std::runtime_error("config: p values must lie in (0, 1]");
  }
  return cfg;
}

inline ExperimentConfig read_config(const std::string& path) {
  return parse_config(slurp_file(path));
}

}  // namespace treembed
