// treembed — command-line front end for the spanning-tree embedding library.
//
//   gen-tree    write a tree from one of the named families as an edge list
//   embed       run the two-phase embedding pipeline on one instance
//   experiment  run a configured trial sweep and emit the CSV
//   threshold   bisect for the p where a configured sweep hits a target rate
//   bound       evaluate the first-moment domination bound in log space
//   dominate    decide k-domination on a graph file and print a certificate
//
// Global flags: --seed (env TREEMBED_SEED; explicit flag wins), --threads.
// Exit codes: 0 success; 1 usage or input error; embed uses 2 for a clean
// "pipeline declined" outcome so scripts can tell failure from breakage.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "treembed/treembed.hpp"

namespace {

using treembed::Tree;
using treembed::TreeSpec;

bool kind_from_name(const std::string& name, TreeSpec::Kind& out) {
  if (name == "random") out = TreeSpec::Kind::random;
  else if (name == "random-bounded") out = TreeSpec::Kind::random_bounded;
  else if (name == "comb") out = TreeSpec::Kind::comb;
  else if (name == "tndelta") out = TreeSpec::Kind::tndelta;
  else if (name == "path") out = TreeSpec::Kind::path;
  else return false;
  return true;
}

Tree tree_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file " + path);
  return treembed::read_tree(in);
}

treembed::Graph graph_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return treembed::read_graph(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  treembed::write_file(path, [&](std::ostream& os) { os << text; });
}

// --- subcommand bodies (each returns the process exit code) ----------------

int run_gen_tree(const std::string& kind_name, int n, int delta, const std::string& out,
                 std::uint64_t seed) {
  TreeSpec spec;
  if (!kind_from_name(kind_name, spec.kind)) {
    std::cerr << "gen-tree: unknown kind " << kind_name << '\n';
    return 1;
  }
  spec.delta = delta;
  const bool needs_delta =
      spec.kind == TreeSpec::Kind::random_bounded || spec.kind == TreeSpec::Kind::tndelta;
  if (needs_delta && delta < 3) {
    std::cerr << "gen-tree: --delta >= 3 is required for kind " << kind_name << '\n';
    return 1;
  }
  const Tree t = treembed::make_tree(spec, n, treembed::Rng::from_seed(seed).split("tree").key);
  std::ostringstream os;
  treembed::write_tree(os, t);
  write_text(out, os.str());
  return 0;
}

int run_embed(const std::string& tree_arg, int n, int delta, double p, bool p_given,
              double eps, const std::string& graph_path, const std::string& report_path,
              const std::string& embedding_out, std::uint64_t seed) {
  const treembed::Rng root = treembed::Rng::from_seed(seed);

  Tree t;
  TreeSpec spec;
  if (kind_from_name(tree_arg, spec.kind)) {
    if (n < 2) {
      std::cerr << "embed: --n >= 2 is required when --tree names a family\n";
      return 1;
    }
    spec.delta = delta;
    t = treembed::make_tree(spec, n, root.split("tree").key);
  } else {
    t = tree_from_file(tree_arg);
    if (n != 0 && n != t.n) {
      std::cerr << "embed: --n " << n << " does not match the tree file (" << t.n
                << " vertices)\n";
      return 1;
    }
  }

  treembed::TwoRoundGraph host;
  if (!graph_path.empty()) {
    // Fixed host: the same graph serves both exposure rounds, so phase
    // budgets are honest about reusing edges. p / p_prime are reported as 0.
    treembed::Graph g = graph_from_file(graph_path);
    if (g.n != t.n) {
      std::cerr << "embed: host has " << g.n << " vertices but the tree has " << t.n << '\n';
      return 1;
    }
    host.g1 = g;
    host.g2 = std::move(g);
    host.p = 0.0;
    host.p_prime = 0.0;
  } else {
    if (!p_given) {
      std::cerr << "embed: either --p (generate a host) or --graph (fixed host) is required\n";
      return 1;
    }
    host = treembed::gnp_two_round(t.n, p, root.split("host").key);
  }

  const treembed::PipelineParams params = treembed::PipelineParams::from_epsilon(eps);
  const auto t0 = std::chrono::steady_clock::now();
  const treembed::PipelineReport rep =
      treembed::embed_spanning_tree(t, host, params, root.split("pipe").key);
  const auto t1 = std::chrono::steady_clock::now();
  const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  bool verified = false;
  if (rep.success && rep.embedding.has_value()) {
    verified = treembed::verify_embedding(t, host.union_graph(), *rep.embedding);
  }

  // phase ledger: ok / failed / not-reached, in this case's execution order
  nlohmann::json phases;
  {
    const char* completion = rep.case_taken == 2 ? "paths" : "stars";
    const std::vector<std::string> order = {"decomposition", "forest", completion};
    const std::string failed = rep.success ? "" : treembed::to_string(rep.failed_phase);
    bool seen_failure = false;
    for (const std::string& name : order) {
      if (!rep.success && name == failed) {
        phases[name] = "failed";
        seen_failure = true;
      } else {
        phases[name] = seen_failure ? "not-reached" : "ok";
      }
    }
  }

  nlohmann::json report;
  report["case"] = rep.case_taken;
  report["phase_outcomes"] = phases;
  report["n"] = t.n;
  report["p"] = host.p;
  report["p_prime"] = host.p_prime;
  report["seed"] = seed;
  report["millis"] = millis;
  report["success"] = rep.success && verified;
  {
    nlohmann::json det;
    det["tree_max_degree"] = t.max_degree();
    det["forest_size"] = rep.forest_size;
    det["completion_items"] = rep.completion_items;
    det["greedy_margin_zone"] = rep.greedy_margin_zone;
    if (!rep.success) {
      if (rep.failed_phase == treembed::PipelinePhase::forest) {
        det["forest_stuck_at"] = rep.forest_stuck_at;
      }
      if (rep.failed_phase == treembed::PipelinePhase::paths) {
        det["path_phase"] = treembed::to_string(rep.path_phase);
      }
      if (rep.hall_witness.has_value()) {
        det["hall_witness_centers"] = rep.hall_witness->centers.size();
        det["hall_witness_neighborhood"] = rep.hall_witness->neighborhood_size;
      }
    }
    report["details"] = det;
  }

  if (!report_path.empty()) {
    write_text(report_path, report.dump(2) + "\n");
  } else {
    std::cout << report.dump(2) << '\n';
  }
  if (rep.success && verified && !embedding_out.empty()) {
    std::ostringstream os;
    treembed::write_embedding_lines(os, rep.embedding->map);
    write_text(embedding_out, os.str());
  }
  if (rep.success && !verified) {
    std::cerr << "embed: internal error: embedding failed verification\n";
    return 1;
  }
  return rep.success ? 0 : 2;
}

int run_experiment_cmd(const std::string& config_path, int threads) {
  const treembed::ExperimentConfig cfg = treembed::read_config(config_path);
  const std::vector<treembed::TrialRecord> records = treembed::run_experiment(cfg, threads);
  std::ostringstream os;
  treembed::write_csv(os, records);
  write_text(cfg.output, os.str());
  return 0;
}

int run_threshold(const std::string& config_path, double target) {
  const treembed::ExperimentConfig cfg = treembed::read_config(config_path);
  const treembed::ThresholdEstimate est = treembed::estimate_threshold(cfg, target);
  for (const treembed::ThresholdProbe& probe : est.probes) {
    std::printf("probe p=%s rate=%.3f (%d/%d)\n", treembed::format_double(probe.p).c_str(),
                probe.rate(), probe.successes, probe.trials);
  }
  std::printf("bracket [%s, %s]\n", treembed::format_double(est.p_low).c_str(),
              treembed::format_double(est.p_high).c_str());
  std::printf("estimate %s\n", treembed::format_double(est.estimate).c_str());
  return 0;
}

int run_bound(int n, int k, double p, int delta, double eps, double coef, bool coef_given) {
  if (k <= 0 || p <= 0.0) {  // derive k and p from (delta, eps)
    if (delta < 3 || eps <= 0.0) {
      std::cerr << "bound: give either --k and --p, or --delta and --eps\n";
      return 1;
    }
    k = (n + delta - 2) / (delta - 1);  // smallest spine that forces domination
    const double c = coef_given ? coef : eps / 2.0;
    p = c * delta * std::log(static_cast<double>(n)) / n;
    std::printf("n=%d delta=%d k=%d p=%s\n", n, delta, k, treembed::format_double(p).c_str());
  } else {
    std::printf("n=%d k=%d p=%s\n", n, k, treembed::format_double(p).c_str());
  }
  const double ln_bound = treembed::union_bound_log(n, k, p);
  std::printf("ln_bound %.6f\n", ln_bound);
  std::printf("log10_bound %.6f\n", ln_bound / std::log(10.0));
  return 0;
}

int run_dominate(const std::string& graph_path, int k, int exact_limit,
                 std::uint64_t node_budget) {
  const treembed::Graph g = graph_from_file(graph_path);
  treembed::DominationOptions opt;
  opt.exact_limit = exact_limit;
  opt.node_budget = node_budget;
  const treembed::DominationCertificate cert = treembed::has_dominating_set(g, k, opt);

  nlohmann::json out;
  out["n"] = g.n;
  out["k"] = k;
  switch (cert.answer) {
    case treembed::DomAnswer::yes: out["answer"] = "yes"; break;
    case treembed::DomAnswer::no: out["answer"] = "no"; break;
    case treembed::DomAnswer::inconclusive: out["answer"] = "inconclusive"; break;
  }
  out["method"] = cert.method == treembed::DomMethod::exact ? "exact" : "greedy_only";
  out["nodes_explored"] = cert.nodes_explored;
  if (cert.answer == treembed::DomAnswer::yes) {
    out["witness"] = cert.witness;
    out["witness_verified"] = treembed::is_dominating_set(g, cert.witness);
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spanning-tree embedding toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--seed", seed, "master RNG seed")->envname("TREEMBED_SEED");
  app.add_option("--threads", threads, "worker threads for experiment sweeps")
      ->check(CLI::PositiveNumber);

  // gen-tree
  auto* gen = app.add_subcommand("gen-tree", "write a tree as an edge list");
  std::string gen_kind, gen_out;
  int gen_n = 0, gen_delta = 0;
  gen->add_option("--kind", gen_kind, "random|random-bounded|comb|tndelta|path")->required();
  gen->add_option("--n", gen_n, "number of vertices")->required()->check(CLI::PositiveNumber);
  gen->add_option("--delta", gen_delta, "max degree (random-bounded/tndelta)");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // embed
  auto* emb = app.add_subcommand("embed", "embed one spanning tree");
  std::string emb_tree, emb_graph, emb_report, emb_out;
  int emb_n = 0, emb_delta = 0;
  double emb_p = 0.0, emb_eps = 0.5;
  emb->add_option("--tree", emb_tree, "tree file, or a family name (random|...|path)")
      ->required();
  emb->add_option("--n", emb_n, "vertices (required for family trees)");
  emb->add_option("--delta", emb_delta, "max degree for family trees that take one");
  auto* emb_p_opt = emb->add_option("--p", emb_p, "edge probability of the generated host");
  emb->add_option("--eps", emb_eps, "pipeline parameter in (0,1)");
  emb->add_option("--graph", emb_graph, "fixed host graph file (bypasses generation)");
  emb->add_option("--report", emb_report, "write the JSON report here instead of stdout");
  emb->add_option("--out", emb_out, "write the embedding lines here on success");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a configured sweep, emit CSV");
  std::string exp_config;
  exp->add_option("--config", exp_config, "JSON config path")->required();

  // threshold
  auto* thr = app.add_subcommand("threshold", "bisect for a target success rate");
  std::string thr_config;
  double thr_target = 0.5;
  thr->add_option("--config", thr_config, "JSON config path")->required();
  thr->add_option("--target", thr_target, "target success rate (default 0.5)");

  // bound
  auto* bnd = app.add_subcommand("bound", "first-moment domination bound, log space");
  int bnd_n = 0, bnd_k = 0, bnd_delta = 0;
  double bnd_p = 0.0, bnd_eps = 0.0, bnd_coef = 0.0;
  bnd->add_option("--n", bnd_n, "host size")->required()->check(CLI::PositiveNumber);
  bnd->add_option("--k", bnd_k, "dominating-set size");
  bnd->add_option("--p", bnd_p, "edge probability");
  bnd->add_option("--delta", bnd_delta, "tree max degree (derives k)");
  bnd->add_option("--eps", bnd_eps, "sets p = coef * delta * ln(n)/n");
  auto* bnd_coef_opt = bnd->add_option("--coef", bnd_coef, "coefficient (default eps/2)");

  // dominate
  auto* dom = app.add_subcommand("dominate", "k-domination certificate for a graph file");
  std::string dom_graph;
  int dom_k = 0, dom_exact_limit = 64;
  std::uint64_t dom_budget = 10'000'000ull;
  dom->add_option("--graph", dom_graph, "edge-list graph file")->required();
  dom->add_option("--k", dom_k, "set size")->required()->check(CLI::PositiveNumber);
  dom->add_option("--exact-limit", dom_exact_limit, "max n for exact search (default 64)");
  dom->add_option("--node-budget", dom_budget, "branch-and-bound node cap (default 1e7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit 0; every parse error is usage
  }

  try {
    if (gen->parsed()) return run_gen_tree(gen_kind, gen_n, gen_delta, gen_out, seed);
    if (emb->parsed()) {
      return run_embed(emb_tree, emb_n, emb_delta, emb_p, emb_p_opt->count() > 0, emb_eps,
                       emb_graph, emb_report, emb_out, seed);
    }
    if (exp->parsed()) return run_experiment_cmd(exp_config, threads);
    if (thr->parsed()) return run_threshold(thr_config, thr_target);
    if (bnd->parsed()) {
      return run_bound(bnd_n, bnd_k, bnd_p, bnd_delta, bnd_eps, bnd_coef,
                       bnd_coef_opt->count() > 0);
    }
    if (dom->parsed()) return run_dominate(dom_graph, dom_k, dom_exact_limit, dom_budget);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
