#include "glauberlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "glauberlab/bounds.hpp"
#include "glauberlab/coloring.hpp"
#include "glauberlab/coupling.hpp"
#include "glauberlab/decomposition.hpp"
#include "glauberlab/dynamics.hpp"
#include "glauberlab/error.hpp"
#include "glauberlab/io.hpp"
#include "glauberlab/spectral.hpp"

#ifndef GLAB_VERSION_STRING
#define GLAB_VERSION_STRING "0.0.0"
#endif

namespace glab {

namespace {

constexpr std::uint64_t kGeneratorStream = 0x67656eULL;  // "gen"
constexpr std::uint64_t kGridStream = 0x67726964ULL;     // "grid"

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string fmt(std::size_t x) { return std::to_string(x); }

struct Instance {
  Graph graph;
  ListAssignment lists;
  std::optional<std::size_t> k;  // uniform lists
  std::string color_source;
};

Graph resolve_graph(const ExperimentConfig& cfg) {
  if (!cfg.graph_file.empty() && !cfg.generator.empty()) {
    fail(ErrorCode::Usage, "give either --graph or --gen, not both");
  }
  if (!cfg.graph_file.empty()) return load_graph(cfg.graph_file);
  if (!cfg.generator.empty()) {
    const auto spec = parse_generator(cfg.generator);
    RngStream rng(cfg.seed, kGeneratorStream);
    return generate_random_chordal(spec.n, spec.max_clique, rng);
  }
  fail(ErrorCode::Usage, "a graph is required (--graph <file> or --gen chordal:n=..,maxclique=..)");
}

Instance resolve_instance(const ExperimentConfig& cfg) {
  Instance inst{resolve_graph(cfg), {}, std::nullopt, {}};
  const Graph& g = inst.graph;
  if (!cfg.lists.empty() && (cfg.colors || cfg.epsilon)) {
    fail(ErrorCode::Usage, "--lists cannot be combined with --colors or --epsilon");
  }
  if (cfg.colors) {
    inst.k = *cfg.colors;
    inst.color_source = "colors";
  } else if (cfg.epsilon) {
    if (*cfg.epsilon <= 0.0) fail(ErrorCode::Usage, "--epsilon must be positive");
    const double raw = (1.0 + *cfg.epsilon) * static_cast<double>(g.max_degree() + 1);
    inst.k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    inst.color_source = "epsilon";
  } else if (!cfg.lists.empty()) {
    inst.lists = load_lists(cfg.lists, g);
    inst.k = inst.lists.uniform_size();
    inst.color_source = "lists";
    return inst;
  } else {
    fail(ErrorCode::Usage, "colours are required (--colors, --epsilon or --lists)");
  }
  if (*inst.k == 0) fail(ErrorCode::Usage, "k must be at least 1");
  inst.lists = uniform_lists(g, *inst.k);
  return inst;
}

std::size_t require_uniform(const Instance& inst, const char* what) {
  if (!inst.k) fail(ErrorCode::Usage, std::string(what) + " needs uniform lists {0..k-1}");
  return *inst.k;
}

EliminationOrdering require_chordal(const Graph& g) {
  auto mcs = maximum_cardinality_search(g);
  if (!mcs.chordal) {
    fail(ErrorCode::NotChordal, "graph is not chordal (vertex " + std::to_string(*mcs.violating_vertex) + ")");
  }
  return mcs.ordering;
}

void base_header(std::vector<std::string>& h, const ExperimentConfig& cfg, const Instance* inst) {
  h.push_back(std::string("glauberlab ") + GLAB_VERSION_STRING);
  h.push_back("config: " + cfg.to_json());
  if (inst) {
    h.push_back("graph: n=" + fmt(inst->graph.size()) + " m=" + fmt(inst->graph.edge_count()) +
                " max_degree=" + fmt(inst->graph.max_degree()) + " digest=" + graph_digest(inst->graph));
    h.push_back("lists: source=" + inst->color_source + (inst->k ? " k=" + fmt(*inst->k) : std::string(" non-uniform")) +
                " digest=" + lists_digest(inst->lists));
  }
}

EnumeratedChain build_chain(const ExperimentConfig& cfg, const Instance& inst) {
  if (cfg.dynamics == "glauber") return glauber_matrix(inst.graph, inst.lists, cfg.enum_cap);
  if (cfg.dynamics == "kempe") return kempe_matrix(inst.graph, require_uniform(inst, "Kempe dynamics"), cfg.enum_cap);
  fail(ErrorCode::Usage, "unknown dynamics '" + cfg.dynamics + "' (glauber | kempe)");
}

PlotSeries tv_series(const std::string& name, const MixingResult& mix) {
  PlotSeries s{name, "t", "max_start_tv", {}};
  for (std::size_t t = 0; t < mix.tv_curve.size(); ++t) s.points.emplace_back(static_cast<double>(t), mix.tv_curve[t]);
  return s;
}

ExperimentResult run_gap(const ExperimentConfig& cfg, bool mix_table) {
  const Instance inst = resolve_instance(cfg);
  const auto chain = build_chain(cfg, inst);
  const auto rep = spectral_gap(chain, chain.size() > cfg.matrix_cap);
  ExperimentResult r;
  base_header(r.header, cfg, &inst);
  std::optional<MixingResult> mix;
  if (rep.ergodic && chain.size() <= std::min(cfg.matrix_cap, kExactStateLimit)) {
    mix = mixing_time_exact(chain, cfg.threshold);
  } else if (mix_table) {
    if (!rep.ergodic) fail(ErrorCode::NotErgodic, "chain is not ergodic; mixing time undefined");
    fail(ErrorCode::CapExceeded, "exact mixing time needs at most " + fmt(std::min(cfg.matrix_cap, kExactStateLimit)) +
                                     " states, chain has " + fmt(chain.size()));
  }
  const double log_bound = std::log(4.0 * static_cast<double>(chain.size())) * rep.relaxation;
  const bool bound_ok = !mix || !rep.ergodic || mixing_within_relaxation_bound(mix->tau, chain.size(), rep.relaxation);
  if (!bound_ok) r.exit_code = 2;
  r.header.push_back("chain: dynamics=" + cfg.dynamics + " states=" + fmt(chain.size()) +
                     " mode=" + to_string(chain.mode()) + " method=" + to_string(rep.method));
  if (!rep.ergodic) r.notes.push_back("chain is not ergodic (eigenvalue 1 has multiplicity " + fmt(rep.unit_multiplicity) + ")");
  if (rep.negative_dominates) r.notes.push_back("lambda_min < -lambda2: gap uses the absolute spectral gap");
  if (mix_table) {
    r.table.columns = {"t", "max_tv"};
    for (std::size_t t = 0; t < mix->tv_curve.size(); ++t) r.table.rows.push_back({fmt(t), format_double(mix->tv_curve[t])});
    r.header.push_back("tau_mix=" + fmt(mix->tau) + " tau_rel=" + format_double(rep.relaxation) +
                       " log_bound=" + format_double(log_bound) + " holds=" + yes_no(bound_ok));
  } else {
    r.table.columns = {"dynamics", "states", "mode", "method", "ergodic", "unit_multiplicity", "lambda2", "lambda_min",
                       "dirichlet_gap", "gap", "tau_rel", "tau_mix", "log_bound", "bound_holds"};
    r.table.rows.push_back({cfg.dynamics, fmt(chain.size()), to_string(chain.mode()), to_string(rep.method),
                            yes_no(rep.ergodic), fmt(rep.unit_multiplicity), format_double(rep.lambda2),
                            format_double(rep.lambda_min), format_double(rep.dirichlet_gap), format_double(rep.gap),
                            format_double(rep.relaxation), mix ? fmt(mix->tau) : std::string("NA"),
                            rep.ergodic ? format_double(log_bound) : std::string("NA"), yes_no(bound_ok)});
  }
  if (mix) r.plots.push_back(tv_series("tv_" + cfg.dynamics, *mix));
  return r;
}

ExperimentResult run_couple(const ExperimentConfig& cfg) {
  if (cfg.replicas == 0) fail(ErrorCode::Usage, "--replicas must be at least 1");
  const Instance inst = resolve_instance(cfg);
  const std::size_t k = require_uniform(inst, "coupling");
  const Graph& g = inst.graph;
  const auto peo = require_chordal(g);
  const std::size_t omega = clique_tree(g).width() + 1;
  const std::size_t n = g.size();
  const std::size_t max_steps = cfg.max_steps ? cfg.max_steps : default_max_steps(omega, n);
  RngStream grid_rng(cfg.seed, kGridStream);
  const auto grid = worst_case_grid(g, k, peo, grid_rng, cfg.pairs);

  ExperimentResult r;
  base_header(r.header, cfg, &inst);
  r.table.columns = {"pair", "replica", "seed", "stream", "T", "final_index", "max_dwell", "mean_dwell"};
  std::vector<std::vector<CouplingRun>> all;
  bool monotone = true;
  std::size_t active = 0, progress = 0;
  PlotSeries means{"coupling_mean_T", "pair", "mean_T", {}};
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const std::uint64_t base = static_cast<std::uint64_t>(p) * cfg.replicas;
    auto runs = run_coupling_batch(g, k, peo, grid[p].first, grid[p].second, cfg.seed, base, cfg.replicas, max_steps,
                                   cfg.jobs);
    for (std::size_t rep = 0; rep < runs.size(); ++rep) {
      const auto& run = runs[rep];
      monotone = monotone && run.monotone;
      active += run.active_steps;
      progress += run.progress_steps;
      std::size_t max_dwell = 0, sum_dwell = 0, visited = 0;
      for (std::size_t d : run.dwell) {
        if (d == 0) continue;
        max_dwell = std::max(max_dwell, d);
        sum_dwell += d;
        ++visited;
      }
      r.table.rows.push_back({fmt(p), fmt(rep), std::to_string(cfg.seed), std::to_string(base + rep),
                              run.coalescence ? fmt(*run.coalescence) : std::string("CENSORED"),
                              fmt(run.final_disagreement), fmt(max_dwell),
                              visited ? format_double(static_cast<double>(sum_dwell) / static_cast<double>(visited))
                                      : std::string("0")});
    }
    means.points.emplace_back(static_cast<double>(p), summarize_runs(runs).mean);
    all.push_back(std::move(runs));
  }
  std::optional<std::size_t> exact;
  const auto count = count_colorings(g, inst.lists);
  if (count <= std::min(cfg.matrix_cap, kExactStateLimit)) {
    exact = mixing_time_exact(kempe_matrix(g, k, cfg.enum_cap), cfg.threshold).tau;
  }
  const auto bound = coupling_mixing_bound(all, exact);
  const double target = static_cast<double>(omega * n * n);
  const bool bound_applies = k >= omega + 2;
  bool within = true;
  for (const auto& s : bound.pairs) within = within && s.mean <= target;
  const double floor_rate =
      bound_applies ? static_cast<double>(k - omega - 1) / static_cast<double>(k * n) : 0.0;
  const bool rate_ok = wilson_upper(progress, active) >= floor_rate;
  if (!bound_applies) {
    r.notes.push_back("k < omega + 2: the omega n^2 bound and the progress floor are not checked");
    within = true;
  }
  r.header.push_back("coupling: omega=" + fmt(omega) + " k=" + fmt(k) + " pairs=" + fmt(grid.size()) +
                     " replicas=" + fmt(cfg.replicas) + " max_steps=" + fmt(max_steps));
  r.header.push_back("max_mean_T=" + format_double(bound.max_mean) + " upper95=" + format_double(bound.max_mean_upper) +
                     " omega_n2=" + format_double(target) + " bound_4ET=" + format_double(bound.bound) +
                     " exact_tau_mix=" + (exact ? fmt(*exact) : std::string("NA")) +
                     " censored=" + yes_no(bound.censored_present));
  r.header.push_back("monotone=" + yes_no(monotone) + " within_omega_n2=" + yes_no(within) +
                     " progress_rate=" + format_double(active ? static_cast<double>(progress) / static_cast<double>(active) : 0.0) +
                     " rate_floor=" + format_double(floor_rate));
  if (!monotone || !within || !rate_ok || (bound.consistent && !*bound.consistent)) r.exit_code = 2;
  if (bound.censored_present) r.notes.push_back("censored replicas present: bound is lower-confidence");
  r.plots.push_back(means);
  PlotSeries ref{"coupling_omega_n2", "pair", "omega_n2", {}};
  for (std::size_t p = 0; p < grid.size(); ++p) ref.points.emplace_back(static_cast<double>(p), target);
  r.plots.push_back(ref);
  return r;
}

ExperimentResult run_project(const ExperimentConfig& cfg) {
  const Instance inst = resolve_instance(cfg);
  const Graph& g = inst.graph;
  if (cfg.vertex && *cfg.vertex >= g.size()) fail(ErrorCode::Usage, "--vertex out of range");
  const auto full = glauber_matrix(g, inst.lists, cfg.enum_cap);
  const auto full_rep = spectral_gap(full, full.size() > cfg.matrix_cap);
  ExperimentResult r;
  base_header(r.header, cfg, &inst);
  r.table.columns = {"vertex", "color", "class_size", "pi_bar", "restriction_gap", "degenerate", "reduced_gap",
                     "restriction_holds", "lambda_min", "projection_gap", "gamma", "bound", "full_gap", "prop_holds",
                     "gamma_holds"};
  bool ok = true;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (cfg.vertex && v != *cfg.vertex) continue;
    const auto pr = projection_restriction(g, inst.lists, v, full, full_rep);
    std::optional<RestrictionGapReport> rg;
    if (g.size() >= 2) rg = restriction_gap_check(g, inst.lists, v, cfg.enum_cap);
    ok = ok && pr.prop_holds && pr.gamma_holds && (!rg || rg->holds);
    for (std::size_t a = 0; a < pr.classes.size(); ++a) {
      const auto& cl = pr.classes[a];
      r.table.rows.push_back({fmt(v), fmt(cl.color), fmt(cl.states), to_string(pr.pi_bar[a]),
                              format_double(cl.restriction_gap), yes_no(cl.degenerate),
                              rg ? format_double(rg->rows[a].reduced_gap) : std::string("NA"),
                              rg ? yes_no(rg->rows[a].holds) : std::string("NA"), format_double(pr.lambda_min),
                              format_double(pr.projection_gap), to_string(pr.gamma), format_double(pr.bound),
                              format_double(pr.full_gap), yes_no(pr.prop_holds), yes_no(pr.gamma_holds)});
    }
  }
  if (!ok) r.exit_code = 2;
  return r;
}

ExperimentResult run_paths(const ExperimentConfig& cfg) {
  const Instance inst = resolve_instance(cfg);
  const std::size_t k = require_uniform(inst, "path construction");
  const Graph& g = inst.graph;
  require_chordal(g);
  const auto ct = clique_tree(g);
  const auto pd = balanced_path_decomposition(g, ct);
  auto space = std::make_shared<const ColoringSpace>(enumerate_colorings(g, inst.lists, cfg.enum_cap));
  const auto fast = glauber_matrix(g, inst.lists, space);
  const auto slow = kempe_matrix(g, k, space);
  const auto ps = kempe_path_system(g, k, pd, fast, slow, cfg.branch_cap);
  const auto cr = congestion(fast, slow, ps);
  ExperimentResult r;
  base_header(r.header, cfg, &inst);
  r.header.push_back("paths: bags=" + fmt(pd.length()) + " max_parts=" + fmt(pd.max_parts()) +
                     " families=" + fmt(ps.families.size()) + " surrogate=" + yes_no(cr.surrogate));
  r.header.push_back("max_rho=" + format_double(cr.max_rho) + " tau_rel_glauber=" + format_double(cr.tau_rel_fast) +
                     " tau_rel_kempe=" + format_double(cr.tau_rel_slow) + " bound=" + format_double(cr.bound) +
                     " holds=" + yes_no(cr.holds));
  r.table.columns = {"from", "to", "rho"};
  for (const auto& row : cr.table) r.table.rows.push_back({fmt(row.from), fmt(row.to), format_double(row.rho)});
  if (!cr.holds) r.exit_code = 2;
  return r;
}

ExperimentResult run_verify_bounds(const ExperimentConfig& cfg) {
  if (cfg.corpus_max_n == 0 || cfg.corpus_max_n > 6) fail(ErrorCode::Usage, "corpus size must be between 1 and 6");
  const auto corpus = graph_corpus(cfg.corpus_max_n);
  const auto sweep = counting_sweep(corpus, cfg.assignments, cfg.seed, true);
  const auto tech = tech_bound_sweep(cfg.tech_tuples, cfg.seed);
  ExperimentResult r;
  base_header(r.header, cfg, nullptr);
  r.header.push_back("corpus_digest: " + corpus.digest + " graphs=" + fmt(corpus.graphs.size()));
  r.header.push_back("counting: instances=" + fmt(sweep.instances) + " checks=" + fmt(sweep.checks) +
                     " violations=" + fmt(sweep.violations));
  r.header.push_back("tech_bound: tuples=" + fmt(tech.tuples) + " vacuous_draws=" + fmt(tech.vacuous_draws) +
                     " violations=" + fmt(tech.violations));
  r.table.columns = {"graph_digest", "lists_digest", "check", "vertex", "color", "lhs", "rhs", "pass"};
  for (const auto& row : sweep.rows) {
    r.table.rows.push_back({row.graph_digest, row.lists_digest, row.check, fmt(row.vertex),
                            row.color ? fmt(*row.color) : std::string("NA"), to_string(row.lhs), to_string(row.rhs),
                            yes_no(row.pass)});
  }
  if (sweep.violations || tech.violations) r.exit_code = 2;
  return r;
}

ExperimentResult run_gen(const ExperimentConfig& cfg) {
  if (cfg.generator.empty()) fail(ErrorCode::Usage, "gen needs --gen chordal:n=..,maxclique=..");
  const Graph g = resolve_graph(cfg);
  const auto mcs = maximum_cardinality_search(g);
  if (!mcs.chordal) fail(ErrorCode::Internal, "generator produced a non-chordal graph");
  ExperimentResult r;
  base_header(r.header, cfg, nullptr);
  r.header.push_back("graph: n=" + fmt(g.size()) + " m=" + fmt(g.edge_count()) + " omega=" +
                     fmt(g.size() ? clique_tree(g).width() + 1 : 0) + " digest=" + graph_digest(g));
  r.table.columns = {"u", "v"};
  for (const auto& [u, v] : g.edges()) r.table.rows.push_back({fmt(u), fmt(v)});
  r.files.emplace_back("graph.json", graph_to_json(g) + "\n");
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) fail(ErrorCode::Parse, "unterminated quoted CSV field");
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

Graph generate_random_chordal(std::size_t n, std::size_t max_clique, RngStream& rng) {
  if (max_clique < 1 || max_clique > std::max<std::size_t>(n, 1)) {
    fail(ErrorCode::InvalidArgument, "need 1 <= maxclique <= n");
  }
  std::vector<std::vector<Vertex>> earlier(n);
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n && max_clique > 1; ++i) {
    const auto u = static_cast<Vertex>(rng.below(i));
    std::vector<Vertex> clique = earlier[u];
    clique.push_back(u);
    const std::size_t size = 1 + rng.below(std::min(max_clique - 1, clique.size()));
    for (std::size_t j = 0; j < size; ++j) std::swap(clique[j], clique[j + rng.below(clique.size() - j)]);
    clique.resize(size);
    std::sort(clique.begin(), clique.end());
    for (Vertex w : clique) edges.emplace_back(w, i);
    earlier[i] = std::move(clique);
  }
  return Graph::from_edges(n, edges);
}

GeneratorSpec parse_generator(const std::string& spec) {
  const std::string prefix = "chordal:";
  if (spec.rfind(prefix, 0) != 0) fail(ErrorCode::Usage, "generator must look like chordal:n=<int>,maxclique=<int>");
  GeneratorSpec g;
  bool have_n = false, have_c = false;
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::Usage, "generator field '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    std::size_t parsed = 0;
    const auto res = std::from_chars(val.data(), val.data() + val.size(), parsed);
    if (res.ec != std::errc() || res.ptr != val.data() + val.size()) {
      fail(ErrorCode::Usage, "generator field '" + key + "' is not an integer");
    }
    if (key == "n") {
      g.n = parsed;
      have_n = true;
    } else if (key == "maxclique") {
      g.max_clique = parsed;
      have_c = true;
    } else {
      fail(ErrorCode::Usage, "unknown generator field '" + key + "'");
    }
  }
  if (!have_n || !have_c) fail(ErrorCode::Usage, "generator needs both n and maxclique");
  return g;
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  if (!graph_file.empty()) j["graph"] = graph_file;
  if (!generator.empty()) j["gen"] = generator;
  if (colors) j["colors"] = *colors;
  if (epsilon) j["epsilon"] = *epsilon;
  if (!lists.empty()) j["lists"] = lists;
  j["dynamics"] = dynamics;
  if (vertex) j["vertex"] = *vertex;
  j["seed"] = seed;
  j["replicas"] = replicas;
  j["max_steps"] = max_steps;
  j["enum_cap"] = enum_cap;
  j["matrix_cap"] = matrix_cap;
  j["branch_cap"] = branch_cap;
  j["pairs"] = pairs;
  j["corpus_max_n"] = corpus_max_n;
  j["assignments"] = assignments;
  j["tech_tuples"] = tech_tuples;
  j["threshold"] = threshold;
  // jobs and out_dir do not influence results and stay out of the echo.
  return j.dump();
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Usage, std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Usage, "config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "command") c.command = val.get<std::string>();
      else if (key == "graph") c.graph_file = val.get<std::string>();
      else if (key == "gen") c.generator = val.get<std::string>();
      else if (key == "colors") c.colors = val.get<std::size_t>();
      else if (key == "epsilon") c.epsilon = val.get<double>();
      else if (key == "lists") c.lists = val.get<std::string>();
      else if (key == "dynamics") c.dynamics = val.get<std::string>();
      else if (key == "vertex") c.vertex = val.get<std::size_t>();
      else if (key == "seed") c.seed = val.get<std::uint64_t>();
      else if (key == "replicas") c.replicas = val.get<std::size_t>();
      else if (key == "max_steps") c.max_steps = val.get<std::size_t>();
      else if (key == "jobs") c.jobs = val.get<std::size_t>();
      else if (key == "enum_cap") c.enum_cap = val.get<std::size_t>();
      else if (key == "matrix_cap") c.matrix_cap = val.get<std::size_t>();
      else if (key == "branch_cap") c.branch_cap = val.get<std::size_t>();
      else if (key == "pairs") c.pairs = val.get<std::size_t>();
      else if (key == "corpus_max_n") c.corpus_max_n = val.get<std::size_t>();
      else if (key == "assignments") c.assignments = val.get<std::size_t>();
      else if (key == "tech_tuples") c.tech_tuples = val.get<std::size_t>();
      else if (key == "threshold") c.threshold = val.get<double>();
      else if (key == "out") c.out_dir = val.get<std::string>();
      else fail(ErrorCode::Usage, "unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Usage, std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const CsvTable& table) {
  for (const auto& h : header) out << "# " << h << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

ParsedCsv parse_csv(std::istream& in) {
  ParsedCsv p;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (!have_columns && line.rfind('#', 0) == 0) {
      p.header.push_back(line.size() >= 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!have_columns) {
      p.table.columns = split_csv_line(line);
      have_columns = true;
      continue;
    }
    auto row = split_csv_line(line);
    if (row.size() != p.table.columns.size()) fail(ErrorCode::Parse, "CSV row width does not match the header");
    p.table.rows.push_back(std::move(row));
  }
  return p;
}

std::vector<std::string> emit_plot_data(const std::vector<PlotSeries>& series, const std::string& dir,
                                        std::ostream* warn) {
  std::vector<std::string> written;
  const bool any = std::any_of(series.begin(), series.end(), [](const PlotSeries& s) { return !s.points.empty(); });
  if (!any) {
    if (warn) *warn << "warning: no plot data to write\n";
    return written;
  }
  std::filesystem::create_directories(dir);
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    const std::string dat = (std::filesystem::path(dir) / (s.name + ".dat")).string();
    const std::string schema = (std::filesystem::path(dir) / (s.name + ".schema.json")).string();
    std::ofstream d(dat);
    for (const auto& [x, y] : s.points) d << format_double(x) << ' ' << format_double(y) << '\n';
    nlohmann::json j;
    j["name"] = s.name;
    j["file"] = s.name + ".dat";
    j["columns"] = {{{"index", 0}, {"name", s.x_label}, {"type", "float64"}},
                    {{"index", 1}, {"name", s.y_label}, {"type", "float64"}}};
    j["rows"] = s.points.size();
    std::ofstream(schema) << j.dump(2) << '\n';
    if (!d || !std::ofstream(schema, std::ios::app)) fail(ErrorCode::Io, "cannot write plot data into " + dir);
    written.push_back(dat);
    written.push_back(schema);
  }
  return written;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.command == "gap") return run_gap(cfg, false);
  if (cfg.command == "mix") return run_gap(cfg, true);
  if (cfg.command == "couple") return run_couple(cfg);
  if (cfg.command == "project") return run_project(cfg);
  if (cfg.command == "paths") return run_paths(cfg);
  if (cfg.command == "verify-bounds") return run_verify_bounds(cfg);
  if (cfg.command == "gen") return run_gen(cfg);
  fail(ErrorCode::Usage, "unknown command '" + cfg.command + "'");
}

void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out,
                      std::ostream& warn) {
  for (const auto& n : result.notes) warn << "note: " << n << '\n';
  if (cfg.out_dir.empty()) {
    write_csv(out, result.header, result.table);
    return;
  }
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / (cfg.command + ".csv");
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Io, "cannot write " + path.string());
  write_csv(f, result.header, result.table);
  for (const auto& [name, body] : result.files) {
    std::ofstream(std::filesystem::path(cfg.out_dir) / name) << body;
  }
  if (!result.plots.empty()) emit_plot_data(result.plots, cfg.out_dir, &warn);
}

}  // namespace glab
