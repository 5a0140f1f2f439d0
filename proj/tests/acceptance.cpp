// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "glauberlab/bounds.hpp"
#include "glauberlab/coloring.hpp"
#include "glauberlab/coupling.hpp"
#include "glauberlab/decomposition.hpp"
#include "glauberlab/dynamics.hpp"
#include "glauberlab/error.hpp"
#include "glauberlab/experiments.hpp"
#include "glauberlab/spectral.hpp"
#include "stats.hpp"

using namespace glab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) o.detail = what;
  o.pass = o.pass && cond;
}

std::vector<Graph> connected_corpus(std::size_t max_n) {
  std::vector<Graph> out;
  for (auto& g : graph_corpus(max_n).graphs) {
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

EliminationOrdering peo_of(const Graph& g) {
  const auto r = maximum_cardinality_search(g);
  if (!r.chordal) fail(ErrorCode::Internal, "generator produced a non-chordal graph");
  return r.ordering;
}

std::size_t omega_of(const Graph& g) { return clique_and_chromatic_number(g).omega; }

// Exact row and column sums from the integer numerators, plus symmetry via a
// transposed lookup. Float-mode chains fall back to a 1e-12 check.
bool exact_symmetric_doubly_stochastic(const EnumeratedChain& c, bool& exact) {
  exact = c.mode() == NumericMode::Exact;
  const std::size_t n = c.size();
  if (!exact) {
    std::vector<double> col(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (const auto& e : c.row(i)) {
        row += e.value;
        col[e.col] += e.value;
        if (std::abs(c.probability(e.col, i) - e.value) > 1e-12) return false;
      }
      if (std::abs(row - 1.0) > 1e-12) return false;
    }
    for (double s : col) {
      if (std::abs(s - 1.0) > 1e-12) return false;
    }
    return true;
  }
  std::vector<Exact> col(n, 0);
  std::vector<std::map<std::size_t, Exact>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    Exact row = 0;
    for (const auto& e : c.row(i)) {
      row += e.numerator;
      col[e.col] += e.numerator;
      rows[i][e.col] = e.numerator;
    }
    if (row != c.denominator()) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (col[i] != c.denominator()) return false;
    for (const auto& [j, v] : rows[i]) {
      const auto it = rows[j].find(i);
      if (it == rows[j].end() || it->second != v) return false;
    }
  }
  return true;
}

std::size_t bfs_components(const EnumeratedChain& c) {
  std::vector<char> seen(c.size(), 0);
  std::size_t comps = 0;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (seen[s]) continue;
    ++comps;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop();
      for (const auto& e : c.row(i)) {
        if (e.value > 0.0 && !seen[e.col]) {
          seen[e.col] = 1;
          q.push(e.col);
        }
      }
    }
  }
  return comps;
}

Outcome stationarity() {
  Outcome o;
  std::size_t graphs = 0, exact = 0;
  for (const auto& g : connected_corpus(5)) {
    const std::size_t k = g.max_degree() + 2;
    const auto lists = uniform_lists(g, k);
    for (const auto& c : {glauber_matrix(g, lists), kempe_matrix(g, k)}) {
      bool was_exact = false;
      expect(o, exact_symmetric_doubly_stochastic(c, was_exact), to_string(c.kind()) + std::string(" on ") + graph_digest(g));
      // pi P = pi for uniform pi is the column-sum condition; check it in floats too.
      expect(o, c.uniform_is_stationary(1e-12), "uniform not stationary on " + graph_digest(g));
      exact += was_exact;
    }
    ++graphs;
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(graphs) + " graphs, " + std::to_string(exact) +
              " of " + std::to_string(2 * graphs) + " chains in exact mode";
  return o;
}

Outcome ergodicity() {
  Outcome o;
  std::size_t graphs = 0;
  for (const auto& g : connected_corpus(5)) {
    const auto c = glauber_matrix(g, uniform_lists(g, g.max_degree() + 2));
    expect(o, bfs_components(c) == 1, "disconnected support on " + graph_digest(g));
    expect(o, c.support_components() == 1, "reported non-ergodic on " + graph_digest(g));
    ++graphs;
  }
  const auto tri = complete_graph(3);
  const auto frozen = glauber_matrix(tri, uniform_lists(tri, 3));
  const auto rep = spectral_gap(frozen);
  expect(o, !rep.ergodic && rep.unit_multiplicity == 6 && bfs_components(frozen) == 6,
         "frozen triangle not reported non-ergodic");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(graphs) + " graphs ergodic, triangle k=3 frozen";
  return o;
}

Outcome projection_bound() {
  Outcome o;
  RngStream rng(2024, 3);
  std::size_t instances = 0, checks = 0;
  double worst_slack = INFINITY;
  while (instances < 60) {
    const std::size_t n = 2 + rng.below(6);
    const auto g = generate_random_chordal(n, 1 + rng.below(n), rng);
    const auto lists = uniform_lists(g, g.max_degree() + 2);
    if (count_colorings(g, lists) > 400) continue;
    const auto full = glauber_matrix(g, lists);
    const auto full_rep = spectral_gap(full);
    for (Vertex v = 0; v < n; ++v) {
      const auto r = projection_restriction(g, lists, v, full, full_rep);
      // Recompute the bound from its ingredients.
      const double pbar = r.projection_gap;
      const double gamma = static_cast<double>(r.gamma);
      const double bound = std::min(pbar / 3.0, r.lambda_min * pbar / (3.0 * gamma + pbar));
      const bool gap_ok = r.full_gap >= bound - 1e-9;
      expect(o, gap_ok && r.prop_holds, "bound fails at v=" + std::to_string(v) + " on " + graph_digest(g));
      expect(o, r.gamma <= Rational(1, static_cast<long>(n)) && r.gamma_holds,
             "gamma > 1/n on " + graph_digest(g));
      worst_slack = std::min(worst_slack, r.full_gap - bound);
      ++checks;
    }
    ++instances;
  }
  std::ostringstream d;
  d << instances << " instances, " << checks << " vertex checks, min slack " << worst_slack;
  o.detail += (o.detail.empty() ? "" : "; ") + d.str();
  return o;
}

Outcome counting() {
  Outcome o;
  const auto corpus = graph_corpus(6);
  const auto sweep = counting_sweep(corpus, 100, 31337);
  const auto tech = tech_bound_sweep(100000, 31337);
  expect(o, corpus.graphs.size() == 1 + 2 + 4 + 11 + 34 + 156, "corpus size");
  expect(o, sweep.violations == 0, std::to_string(sweep.violations) + " counting violations");
  expect(o, tech.tuples == 100000 && tech.violations == 0, std::to_string(tech.violations) + " technical-bound violations");
  std::ostringstream d;
  d << corpus.graphs.size() << " graphs, " << sweep.instances << " assignments, " << sweep.checks << " checks, "
    << tech.tuples << " tuples";
  o.detail += (o.detail.empty() ? "" : "; ") + d.str();
  return o;
}

Outcome comparison() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t n : {3, 4}) {
    const auto g = path_graph(n);
    const std::size_t k = g.max_degree() + 2;
    const auto fast = glauber_matrix(g, uniform_lists(g, k));
    const auto slow = kempe_matrix(g, k);
    const auto pd = balanced_path_decomposition(g, clique_tree(g));
    const auto paths = kempe_path_system(g, k, pd, fast, slow);
    const auto rep = congestion(fast, slow, paths);
    const double tf = spectral_gap(fast).relaxation;
    const double ts = spectral_gap(slow).relaxation;
    expect(o, tf <= ts * rep.max_rho + 1e-9 && rep.holds, "comparison fails on P" + std::to_string(n));
    expect(o, !paths.surrogate, "path system truncated on P" + std::to_string(n));
    const auto halved = congestion(halved_chain(fast), fast, identity_paths(fast));
    expect(o, halved.max_rho == 2.0 && halved.holds, "halved chain rho != 2 on P" + std::to_string(n));
    d << "P" << n << ": tau_rel " << tf << " <= " << ts << " * " << rep.max_rho << "; ";
  }
  o.detail += (o.detail.empty() ? "" : "; ") + d.str() + "halved rho = 2";
  return o;
}

Outcome path_validity() {
  Outcome o;
  RngStream rng(777, 6);
  std::size_t cases = 0, paths = 0, truncated = 0;
  while (cases < 1000) {
    const std::size_t n = 2 + rng.below(9);
    const auto g = generate_random_chordal(n, 1 + rng.below(std::min<std::size_t>(n, 4)), rng);
    const std::size_t k = g.max_degree() + 2;
    const auto peo = peo_of(g);
    const auto alpha = random_greedy_coloring(g, k, peo, rng);
    const Vertex v = static_cast<Vertex>(rng.below(n));
    Color c = static_cast<Color>(rng.below(k - 1));
    if (c >= alpha[v]) ++c;
    const auto chain = kempe_chain(g, alpha, v, c);
    const auto beta = swap_colors(alpha, chain, alpha[v], c);
    const auto pd = balanced_path_decomposition(g, clique_tree(g));
    const auto gp = kempe_to_glauber_paths(g, k, pd, alpha, beta);
    std::vector<char> in_chain(n, 0);
    for (Vertex u : chain) in_chain[u] = 1;
    expect(o, !gp.paths.empty(), "no path emitted");
    for (const auto& p : gp.paths) {
      expect(o, p.front() == alpha && p.back() == beta, "path endpoints wrong");
      std::vector<int> moves(n, 0);
      for (std::size_t s = 0; s < p.size(); ++s) {
        for (const auto& [a, b] : g.edges()) expect(o, p[s][a] != p[s][b], "improper intermediate colouring");
        for (Vertex u = 0; u < n; ++u) expect(o, p[s][u] < k, "colour out of range");
        if (s == 0) continue;
        std::size_t diff = 0;
        for (Vertex u = 0; u < n; ++u) {
          if (p[s][u] != p[s - 1][u]) {
            ++diff;
            ++moves[u];
            expect(o, in_chain[u], "path recolours a vertex outside the chain");
          }
        }
        expect(o, diff == 1, "step is not a single-vertex recolouring");
      }
      for (int m : moves) expect(o, m <= 2, "vertex recoloured more than twice");
      ++paths;
    }
    truncated += gp.truncated;
    ++cases;
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(cases) + " cases, " + std::to_string(paths) +
              " paths, " + std::to_string(truncated) + " truncated at the branch cap";
  return o;
}

Outcome coupling() {
  Outcome o;
  RngStream rng(4242, 7);
  std::ostringstream d;
  std::size_t instances = 0, exact_checked = 0;
  double worst_ratio = 0.0;
  for (std::size_t n = 4; n <= 10; ++n) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto g = generate_random_chordal(n, 2 + rng.below(std::min<std::size_t>(n - 1, 3)), rng);
      const std::size_t omega = omega_of(g);
      const std::size_t k = omega + 2;
      const auto peo = peo_of(g);
      const double bound = static_cast<double>(omega * n * n);
      auto grid = worst_case_grid(g, k, peo, rng, 8);
      std::vector<std::vector<CouplingRun>> runs;
      const std::uint64_t seed = 9000 + instances;
      for (std::size_t p = 0; p < grid.size(); ++p) {
        runs.push_back(run_coupling_batch(g, k, peo, grid[p].first, grid[p].second, seed, p * 200, 200,
                                          default_max_steps(omega, n)));
      }
      for (const auto& rs : runs) {
        for (const auto& r : rs) expect(o, r.monotone && !r.censored(), "non-monotone or censored run");
        const auto s = summarize_runs(rs);
        expect(o, s.mean <= bound && s.ci_high < bound, "mean T above omega n^2 at n=" + std::to_string(n));
        worst_ratio = std::max(worst_ratio, s.ci_high / bound);
      }
      std::optional<std::size_t> exact;
      if (count_colorings(g, uniform_lists(g, k)) <= 2000) {
        exact = mixing_time_exact(kempe_matrix(g, k)).tau;
        ++exact_checked;
      }
      const auto cb = coupling_mixing_bound(runs, exact);
      if (exact) expect(o, cb.consistent && *cb.consistent, "4 max E[T] below exact tau_mix at n=" + std::to_string(n));
      ++instances;
    }
  }
  d << instances << " graphs, " << exact_checked << " exact tau_mix checks, max upper-CI / (omega n^2) = " << worst_ratio;
  o.detail += (o.detail.empty() ? "" : "; ") + d.str();
  return o;
}

Outcome sampler_agreement() {
  Outcome o;
  std::ostringstream d;
  const auto g = complete_graph(3);
  for (const auto dyn : {Dynamics::Kempe, Dynamics::Glauber}) {
    const std::size_t k = dyn == Dynamics::Kempe ? 3 : 4;
    const auto lists = uniform_lists(g, k);
    const auto m = dyn == Dynamics::Glauber ? glauber_matrix(g, lists) : kempe_matrix(g, k);
    const auto& sp = m.space();
    std::vector<std::vector<std::size_t>> counts(sp.size(), std::vector<std::size_t>(sp.size(), 0));
    RngStream rng(8, static_cast<std::uint64_t>(dyn));
    Coloring cur = sp.coloring(0);
    std::size_t from = 0;
    for (int s = 0; s < 100000; ++s) {
      cur = dyn == Dynamics::Glauber ? glauber_step(g, lists, cur, rng) : kempe_step(g, k, cur, rng);
      const auto to = *sp.index_of(cur);
      ++counts[from][to];
      from = to;
    }
    stats::ChiSquare chi;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      std::vector<double> probs(sp.size());
      for (std::size_t j = 0; j < sp.size(); ++j) probs[j] = m.probability(i, j);
      expect(o, chi.add(probs, counts[i]), "sampler took a zero-probability transition");
    }
    expect(o, chi.p_value() > 0.001, std::string(to_string(dyn)) + " chi-square p too small");
    d << to_string(dyn) << " k=" << k << " p=" << chi.p_value() << " (df " << chi.df << "); ";
  }
  o.detail += (o.detail.empty() ? "" : "; ") + d.str();
  return o;
}

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto r = run_experiment(cfg);
  write_csv(out, r.header, r.table);
  return out.str();
}

Outcome mixing_and_determinism() {
  Outcome o;
  struct Fixture {
    Graph g;
    std::size_t k;
  };
  const std::vector<Fixture> fixtures{{complete_graph(1), 2}, {complete_graph(2), 3}, {path_graph(3), 3},
                                      {path_graph(3), 4},     {path_graph(4), 4},     {complete_graph(3), 4},
                                      {complete_graph(3), 5}, {cycle_graph(4), 4},    {star_graph(3), 5},
                                      {cycle_graph(5), 4},    {complete_graph(4), 6}};
  std::size_t chains = 0;
  for (const auto& f : fixtures) {
    for (const auto& c : {glauber_matrix(f.g, uniform_lists(f.g, f.k)), kempe_matrix(f.g, f.k)}) {
      const auto rep = spectral_gap(c);
      if (!rep.ergodic) continue;
      const auto tau = mixing_time_exact(c).tau;
      const double rhs = std::log(4.0 * static_cast<double>(c.size())) * rep.relaxation;
      expect(o, static_cast<double>(tau) <= rhs, "tau_mix above log(4|Omega|) tau_rel");
      ++chains;
    }
  }
  ExperimentConfig couple;
  couple.command = "couple";
  couple.generator = "chordal:n=7,maxclique=3";
  couple.epsilon = 1.0;
  couple.replicas = 50;
  couple.seed = 12345;
  const auto first = csv_of(couple);
  couple.jobs = 3;
  expect(o, first == csv_of(couple) && first == csv_of(couple), "couple output differs between runs");
  const auto p4 = std::filesystem::temp_directory_path() / "glab_acceptance_p4.txt";
  std::ofstream(p4) << "4 3 0 1 1 2 2 3\n";
  for (const char* cmd : {"gap", "mix", "project", "paths", "gen"}) {
    ExperimentConfig c;
    c.command = cmd;
    if (c.command == "gen") {
      c.generator = "chordal:n=12,maxclique=4";
    } else {
      c.graph_file = p4.string();
      c.colors = 4;
    }
    c.seed = 99;
    expect(o, csv_of(c) == csv_of(c), std::string(cmd) + " output differs between runs");
  }
  ExperimentConfig vb;
  vb.command = "verify-bounds";
  vb.corpus_max_n = 4;
  vb.assignments = 10;
  vb.tech_tuples = 1000;
  expect(o, csv_of(vb) == csv_of(vb), "verify-bounds output differs between runs");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(chains) + " ergodic fixture chains, 7 commands repeated";
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 stationarity and reversibility", 60, stationarity},
      {"2 ergodicity at max degree + 2", 60, ergodicity},
      {"3 projection-restriction bound", 300, projection_bound},
      {"4 counting bounds", 600, counting},
      {"5 Kempe/Glauber comparison", 120, comparison},
      {"6 path construction validity", 120, path_validity},
      {"7 coupling bounds", 600, coupling},
      {"8 sampler/matrix agreement", 60, sampler_agreement},
      {"9 mixing bound and determinism", 60, mixing_and_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failures += !o.pass;
    std::printf("%s criterion %s (%.1fs, limit %.0fs): %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, c.limit_seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
