#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "glauberlab/glauberlab.h"

int main(int argc, char** argv) {
  CLI::App app{"Glauber and Kempe dynamics laboratory"};
  app.set_version_flag("--version", std::string(glab_version()));
  app.require_subcommand(1);

  std::string graph, gen, lists, out, dynamics = "glauber";
  std::optional<std::size_t> colors, vertex;
  std::optional<double> epsilon;
  std::uint64_t seed = 1;
  std::size_t replicas = 200, max_steps = 0, jobs = 1, enum_cap = 200000, matrix_cap = 2000, branch_cap = 64;
  std::size_t pairs = 8, corpus_n = 5, assignments = 100, tech_tuples = 10000;
  double threshold = 0.25;

  const char* commands[][2] = {
      {"gap", "spectral gap, relaxation and mixing time of a dynamics"},
      {"mix", "exact worst-start TV curve and mixing time"},
      {"couple", "run the disagreement-index coupling on worst-case start pairs"},
      {"project", "projection/restriction decomposition at each vertex"},
      {"paths", "Kempe-to-Glauber canonical paths and congestion"},
      {"verify-bounds", "exhaustive counting-inequality sweep"},
      {"gen", "generate a random chordal graph"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    const std::string cmd = name;
    if (cmd != "verify-bounds") {
      sub->add_option("--graph", graph, "graph file (JSON or edge list)");
      sub->add_option("--gen", gen, "generator, chordal:n=<int>,maxclique=<int>");
    }
    if (cmd != "verify-bounds" && cmd != "gen") {
      sub->add_option("--colors", colors, "uniform colours {0..k-1}");
      sub->add_option("--epsilon", epsilon, "k = ceil((1+eps)(max degree + 1))");
      sub->add_option("--lists", lists, "list file or k=<int>");
      sub->add_option("--enum-cap", enum_cap, "enumeration cap on |Omega|");
      sub->add_option("--matrix-cap", matrix_cap, "largest chain solved exactly");
    }
    if (cmd == "gap" || cmd == "mix") {
      sub->add_option("--dynamics", dynamics, "glauber | kempe")->check(CLI::IsMember({"glauber", "kempe"}));
      sub->add_option("--threshold", threshold, "TV threshold for the mixing time");
    }
    if (cmd == "couple") {
      sub->add_option("--replicas", replicas, "replicas per start pair");
      sub->add_option("--max-steps", max_steps, "step budget per replica (0: 100*omega*n^2)");
      sub->add_option("--jobs", jobs, "worker threads");
      sub->add_option("--pairs", pairs, "random start pairs when |Omega| > 50");
    }
    if (cmd == "project") sub->add_option("--vertex", vertex, "only this vertex");
    if (cmd == "paths") sub->add_option("--branch-cap", branch_cap, "maximum paths per Kempe exchange");
    if (cmd == "verify-bounds") {
      sub->add_option("--corpus-n", corpus_n, "largest corpus graph order (<= 6)");
      sub->add_option("--assignments", assignments, "random deg+2 list assignments per graph");
      sub->add_option("--tech-tuples", tech_tuples, "random technical-bound tuples");
    }
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--out", out, "output directory (default: CSV on stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  nlohmann::json cfg;
  const std::string cmd = app.get_subcommands().front()->get_name();
  cfg["command"] = cmd;
  if (!graph.empty()) cfg["graph"] = graph;
  if (!gen.empty()) cfg["gen"] = gen;
  if (colors) cfg["colors"] = *colors;
  if (epsilon) cfg["epsilon"] = *epsilon;
  if (!lists.empty()) cfg["lists"] = lists;
  if (vertex) cfg["vertex"] = *vertex;
  cfg["dynamics"] = dynamics;
  cfg["seed"] = seed;
  cfg["replicas"] = replicas;
  cfg["max_steps"] = max_steps;
  cfg["jobs"] = jobs;
  cfg["enum_cap"] = enum_cap;
  cfg["matrix_cap"] = matrix_cap;
  cfg["branch_cap"] = branch_cap;
  cfg["pairs"] = pairs;
  cfg["corpus_max_n"] = corpus_n;
  cfg["assignments"] = assignments;
  cfg["tech_tuples"] = tech_tuples;
  cfg["threshold"] = threshold;

  int exit_code = 0;
  const glab_status st = glab_run_experiment(cfg.dump().c_str(), out.c_str(), &exit_code);
  if (st != GLAB_OK) {
    std::cerr << "error (" << glab_status_name(st) << "): " << glab_last_error() << '\n';
    return 1;
  }
  return exit_code;
}
