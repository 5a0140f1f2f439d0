#include "glauberlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "glauberlab/bounds.hpp"
#include "glauberlab/error.hpp"
#include "glauberlab/linalg.hpp"

namespace glab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void finish_report(SpectralReport& r) {
  if (r.degenerate) {
    r.ergodic = true;
    r.dirichlet_gap = r.absolute_gap = r.gap = kInf;
    r.relaxation = 0.0;
    return;
  }
  if (!r.ergodic) {
    r.lambda2 = 1.0;
    r.dirichlet_gap = r.absolute_gap = r.gap = 0.0;
    r.relaxation = kInf;
    return;
  }
  r.dirichlet_gap = 1.0 - r.lambda2;
  r.absolute_gap = std::min(r.dirichlet_gap, 1.0 + r.lambda_min);
  r.negative_dominates = r.lambda_min < -r.lambda2;
  r.gap = r.negative_dominates ? r.absolute_gap : r.dirichlet_gap;
  r.relaxation = r.gap > 0.0 ? 1.0 / r.gap : kInf;
}

void from_eigenvalues(SpectralReport& r, const SymmetricEigen& eig) {
  r.method = EigenMethod::Jacobi;
  r.eigenvalues = eig.values;
  r.sweeps = eig.sweeps;
  r.converged = eig.converged;
  const std::size_t n = eig.values.size();
  r.lambda_min = eig.values.front();
  if (r.unit_multiplicity < n) r.lambda2 = eig.values[n - 1 - r.unit_multiplicity];
}

std::size_t dense_components(const std::vector<double>& a, std::size_t n) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i * n + j] > 0.0 || a[j * n + i] > 0.0) {
        const std::size_t x = find(i), y = find(j);
        if (x != y) {
          parent[x] = y;
          --comps;
        }
      }
    }
  }
  return comps;
}

// First-occurrence relabelling is the identity: one representative per orbit
// of colour permutations when every list is {0..k-1}.
bool canonical_relabelling(std::span<const Color> c) {
  Color next = 0;
  for (Color x : c) {
    if (x == next) {
      ++next;
    } else if (x > next) {
      return false;
    }
  }
  return true;
}

void require_deg_plus_two(const Graph& g, const ListAssignment& lists) {
  if (lists.size() != g.size()) fail(ErrorCode::InvalidArgument, "list assignment does not match the graph");
  if (!lists.is_deg_plus_two(g)) fail(ErrorCode::Precondition, "list assignment is not deg+2");
}

std::size_t color_index(const ListAssignment& lists, Vertex v, Color c) {
  const auto l = lists.list(v);
  auto it = std::lower_bound(l.begin(), l.end(), c);
  if (it == l.end() || *it != c) {
    fail(ErrorCode::Precondition, "colour " + std::to_string(c) + " is not in L(" + std::to_string(v) + ")");
  }
  return static_cast<std::size_t>(it - l.begin());
}

// |Omega_{G-v,L^{v,c1}} intersect Omega_{G-v,L^{v,c2}}|: colourings of G - v
// whose neighbours of v avoid both colours.
BigInt pair_count(const Graph& g, const ListAssignment& lists, Vertex v, Color c1, Color c2) {
  auto r = restrict_lists(g, lists, {{v, c1}});
  std::vector<std::vector<Color>> l = r.lists.lists();
  for (std::size_t i = 0; i < r.subgraph.original.size(); ++i) {
    if (g.adjacent(v, r.subgraph.original[i])) std::erase(l[i], c2);
  }
  return count_colorings(r.subgraph.graph, ListAssignment(std::move(l)));
}

}  // namespace

const char* to_string(EigenMethod m) { return m == EigenMethod::Jacobi ? "jacobi" : "power-deflation"; }

double tv_distance(std::span<const double> mu, std::span<const double> nu) {
  if (mu.size() != nu.size()) fail(ErrorCode::InvalidArgument, "distributions have different supports");
  const double smu = std::accumulate(mu.begin(), mu.end(), 0.0);
  const double snu = std::accumulate(nu.begin(), nu.end(), 0.0);
  if (std::abs(smu - 1.0) > 1e-12 || std::abs(snu - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "distribution does not sum to 1");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) d += std::abs(mu[i] - nu[i]);
  return std::min(1.0, 0.5 * d);
}

SpectralReport spectral_gap(const EnumeratedChain& chain, bool force_power) {
  SpectralReport r;
  const std::size_t n = chain.size();
  r.states = n;
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty state space");
  r.unit_multiplicity = chain.support_components();
  r.ergodic = r.unit_multiplicity == 1;
  if (n == 1) {
    r.degenerate = true;
    r.lambda2 = r.lambda_min = 1.0;
    r.eigenvalues = {1.0};
    r.converged = true;
    finish_report(r);
    return r;
  }
  if (!chain.is_symmetric(1e-12)) fail(ErrorCode::Precondition, "spectral analysis expects a symmetric chain");
  if (n <= kJacobiLimit && !force_power) {
    from_eigenvalues(r, jacobi_eigen(chain.dense(), n));
  } else {
    r.method = EigenMethod::PowerDeflation;
    if (r.ergodic) {
      const std::vector<std::vector<double>> constant{std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
      auto apply = [&](double sign, const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t i = 0; i < n; ++i) {
          double s = 0.0;
          for (const auto& e : chain.row(i)) s += e.value * x[e.col];
          y[i] = 0.5 * (x[i] + sign * s);
        }
      };
      const auto top = power_iteration([&](const auto& x, auto& y) { apply(1.0, x, y); }, n, constant, 200000, 1e-13);
      const auto bottom = power_iteration([&](const auto& x, auto& y) { apply(-1.0, x, y); }, n, {}, 200000, 1e-13);
      r.lambda2 = 2.0 * top.value - 1.0;
      r.lambda_min = 1.0 - 2.0 * bottom.value;
      r.converged = top.converged && bottom.converged;
    }
  }
  finish_report(r);
  return r;
}

SpectralReport spectral_gap_dense(const std::vector<double>& symmetric, std::size_t n) {
  SpectralReport r;
  r.states = n;
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty state space");
  r.unit_multiplicity = dense_components(symmetric, n);
  r.ergodic = r.unit_multiplicity == 1;
  if (n == 1) {
    r.degenerate = true;
    r.lambda2 = r.lambda_min = 1.0;
    r.eigenvalues = {1.0};
    r.converged = true;
  } else {
    from_eigenvalues(r, jacobi_eigen(symmetric, n));
  }
  finish_report(r);
  return r;
}

MixingResult mixing_time_exact(const EnumeratedChain& chain, double threshold, std::size_t max_steps) {
  const std::size_t n = chain.size();
  if (n > kExactStateLimit) {
    fail(ErrorCode::Precondition, "exact mixing time is limited to " + std::to_string(kExactStateLimit) + " states");
  }
  if (chain.support_components() != 1) fail(ErrorCode::NotErgodic, "chain is not ergodic; mixing time undefined");
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    if (!chain.color_symmetric() || canonical_relabelling(chain.space().at(i))) starts.push_back(i);
  }
  const double u = 1.0 / static_cast<double>(n);
  std::vector<std::vector<double>> dist(starts.size(), std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < starts.size(); ++s) dist[s][starts[s]] = 1.0;
  auto worst_tv = [&]() {
    double worst = 0.0;
    for (const auto& d : dist) {
      double tv = 0.0;
      for (double p : d) tv += std::abs(p - u);
      worst = std::max(worst, std::min(1.0, 0.5 * tv));
    }
    return worst;
  };
  MixingResult out;
  out.starts_evaluated = starts.size();
  out.tv_curve.push_back(worst_tv());
  std::vector<double> next(n);
  while (out.tv_curve.back() > threshold) {
    if (out.tau >= max_steps) fail(ErrorCode::CapExceeded, "mixing time exceeds " + std::to_string(max_steps) + " steps");
    for (auto& d : dist) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] == 0.0) continue;
        for (const auto& e : chain.row(i)) next[e.col] += d[i] * e.value;
      }
      d.swap(next);
    }
    ++out.tau;
    const double tv = worst_tv();
    if (tv > out.tv_curve.back() + 1e-12) {
      fail(ErrorCode::Internal, "max-start TV increased at t = " + std::to_string(out.tau));
    }
    out.tv_curve.push_back(tv);
  }
  return out;
}

bool mixing_within_relaxation_bound(std::size_t tau_mix, std::size_t states, double relaxation) {
  return static_cast<double>(tau_mix) <= std::log(4.0 * static_cast<double>(states)) * relaxation;
}

bool projection_bound_holds(double full_gap, double bound, double tol) { return full_gap >= bound - tol; }

ProjectionRestrictionReport projection_restriction(const Graph& g, const ListAssignment& lists, Vertex v,
                                                   std::size_t cap) {
  require_deg_plus_two(g, lists);
  const auto full = glauber_matrix(g, lists, cap);
  return projection_restriction(g, lists, v, full, spectral_gap(full));
}

ProjectionRestrictionReport projection_restriction(const Graph& g, const ListAssignment& lists, Vertex v,
                                                   const EnumeratedChain& full, const SpectralReport& full_report) {
  require_deg_plus_two(g, lists);
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
  const std::size_t n = g.size();
  const auto l = lists.list(v);
  const std::size_t m = l.size();
  ProjectionRestrictionReport r;
  r.vertex = v;
  r.n = n;
  r.colors.assign(l.begin(), l.end());

  const auto& space = full.space();
  std::vector<std::vector<std::size_t>> members(m);
  std::vector<std::size_t> class_of(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    class_of[i] = color_index(lists, v, space.at(i)[v]);
    members[class_of[i]].push_back(i);
  }
  r.lambda_min = kInf;
  for (std::size_t a = 0; a < m; ++a) {
    if (members[a].empty()) fail(ErrorCode::Precondition, "colour class " + std::to_string(l[a]) + " is empty");
    const auto rep = spectral_gap(restricted_chain(full, members[a]));
    r.classes.push_back({l[a], members[a].size(), rep.dirichlet_gap, rep.degenerate});
    if (!rep.degenerate) r.lambda_min = std::min(r.lambda_min, rep.dirichlet_gap);
  }

  // gamma: largest probability of leaving one's own class, from the move rule,
  // cross-checked against the matrix in exact mode.
  const Rational step(BigInt(1), BigInt(n * m));
  r.gamma = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto x = space.at(i);
    unsigned free = 0;
    for (Color c : l) {
      if (c == x[v]) continue;
      bool used = false;
      for (Vertex w : g.neighbors(v)) used = used || x[w] == c;
      if (!used) ++free;
    }
    const Rational leave = step * free;
    if (full.mode() == NumericMode::Exact) {
      Rational from_matrix = 0;
      for (const auto& e : full.row(i)) {
        if (class_of[e.col] != class_of[i]) from_matrix += full.exact_probability(i, e.col);
      }
      if (from_matrix != leave) fail(ErrorCode::Internal, "class-leaving mass disagrees with the transition matrix");
    }
    r.gamma = std::max(r.gamma, leave);
  }

  // Projection chain from the counting formula.
  const BigInt total(space.size());
  r.projection.assign(m * m, Rational(0));
  r.pi_bar.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    r.pi_bar[a] = Rational(BigInt(members[a].size()), total);
    Rational off = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const Rational p = step * Rational(pair_count(g, lists, v, l[a], l[b]), BigInt(members[a].size()));
      r.projection[a * m + b] = p;
      off += p;
    }
    r.projection[a * m + a] = 1 - off;
  }
  // Same chain aggregated from P.
  std::vector<double> agg(m * m, 0.0);
  std::vector<Rational> agg_exact(full.mode() == NumericMode::Exact ? m * m : 0, Rational(0));
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (const auto& e : full.row(i)) {
      agg[class_of[i] * m + class_of[e.col]] += e.value;
      if (!agg_exact.empty()) agg_exact[class_of[i] * m + class_of[e.col]] += full.exact_probability(i, e.col);
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const Rational& want = r.projection[a * m + b];
      if (!agg_exact.empty()) {
        if (agg_exact[a * m + b] / static_cast<unsigned>(members[a].size()) != want) {
          fail(ErrorCode::Internal, "aggregated projection disagrees with the counting formula");
        }
      } else if (std::abs(agg[a * m + b] / static_cast<double>(members[a].size()) - to_double(want)) > 1e-9) {
        fail(ErrorCode::Internal, "aggregated projection disagrees with the counting formula");
      }
    }
  }
  std::vector<double> sym(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      sym[a * m + b] = std::sqrt(to_double(r.pi_bar[a]) / to_double(r.pi_bar[b])) * to_double(r.projection[a * m + b]);
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) sym[a * m + b] = sym[b * m + a] = 0.5 * (sym[a * m + b] + sym[b * m + a]);
  }
  r.projection_gap = spectral_gap_dense(sym, m).dirichlet_gap;
  const double lb = r.projection_gap;
  if (std::isinf(r.lambda_min)) {
    r.bound = lb / 3.0;
  } else {
    r.bound = std::min(lb / 3.0, r.lambda_min * lb / (3.0 * to_double(r.gamma) + lb));
  }
  r.full_gap = full_report.dirichlet_gap;
  r.prop_holds = projection_bound_holds(r.full_gap, r.bound);
  r.gamma_holds = r.gamma <= Rational(BigInt(1), BigInt(n));
  return r;
}

RestrictionGapReport restriction_gap_check(const Graph& g, const ListAssignment& lists, Vertex v, std::size_t cap) {
  require_deg_plus_two(g, lists);
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
  if (g.size() < 2) fail(ErrorCode::Precondition, "G - v is empty");
  const auto full = glauber_matrix(g, lists, cap);
  const auto l = lists.list(v);
  std::vector<std::vector<std::size_t>> members(l.size());
  for (std::size_t i = 0; i < full.size(); ++i) members[color_index(lists, v, full.space().at(i)[v])].push_back(i);
  RestrictionGapReport out;
  out.vertex = v;
  out.holds = true;
  for (std::size_t a = 0; a < l.size(); ++a) {
    if (members[a].empty()) fail(ErrorCode::Precondition, "colour class " + std::to_string(l[a]) + " is empty");
    const auto restr = spectral_gap(restricted_chain(full, members[a]));
    const auto reduced = restrict_lists(g, lists, {{v, l[a]}});
    const auto sub = spectral_gap(glauber_matrix(reduced.subgraph.graph, reduced.lists, cap));
    RestrictionGapRow row{l[a], restr.dirichlet_gap, sub.dirichlet_gap, restr.degenerate || sub.degenerate, true};
    if (!row.degenerate) row.holds = row.restriction_gap >= row.reduced_gap / 4.0 - 1e-9;
    out.holds = out.holds && row.holds;
    out.rows.push_back(row);
  }
  return out;
}

PathSystem identity_paths(const EnumeratedChain& slow) {
  PathSystem ps;
  for (std::size_t i = 0; i < slow.size(); ++i) {
    for (const auto& e : slow.row(i)) {
      if (e.col == i || e.value <= 0.0) continue;
      ps.families.push_back({i, e.col, {{{i, e.col}, 1.0}}, false});
    }
  }
  return ps;
}

CongestionReport congestion(const EnumeratedChain& fast, const EnumeratedChain& slow, const PathSystem& paths,
                            double tol) {
  if (!(fast.space() == slow.space())) fail(ErrorCode::InvalidArgument, "chains do not share a state space");
  std::map<std::pair<std::size_t, std::size_t>, double> load;
  for (const auto& fam : paths.families) {
    double total = 0.0;
    for (const auto& p : fam.paths) total += p.weight;
    if (total < 1.0 - 1e-12) {
      fail(ErrorCode::WeightDeficit, "path weights for (" + std::to_string(fam.from) + "," + std::to_string(fam.to) +
                                         ") sum to " + std::to_string(total) + " < 1");
    }
    const double q = slow.probability(fam.from, fam.to);
    for (const auto& p : fam.paths) {
      if (p.states.size() < 2 || p.states.front() != fam.from || p.states.back() != fam.to) {
        fail(ErrorCode::InvalidArgument, "path endpoints do not match its transition");
      }
      const double len = static_cast<double>(p.states.size() - 1);
      for (std::size_t s = 0; s + 1 < p.states.size(); ++s) {
        const std::size_t a = p.states[s], b = p.states[s + 1];
        if (a == b || fast.probability(a, b) <= 0.0) {
          fail(ErrorCode::InvalidArgument,
               "path step (" + std::to_string(a) + "," + std::to_string(b) + ") is not a transition");
        }
        load[{a, b}] += p.weight * len * q;
      }
    }
  }
  CongestionReport r;
  r.surrogate = paths.surrogate;
  for (const auto& [edge, l] : load) {
    const double rho = l / fast.probability(edge.first, edge.second);
    r.table.push_back({edge.first, edge.second, rho});
    if (rho > r.max_rho) {
      r.max_rho = rho;
      r.arg_from = edge.first;
      r.arg_to = edge.second;
    }
  }
  const auto fr = spectral_gap(fast), sr = spectral_gap(slow);
  r.tau_rel_fast = 1.0 / fr.dirichlet_gap;
  r.tau_rel_slow = 1.0 / sr.dirichlet_gap;
  r.bound = r.tau_rel_slow * r.max_rho;
  r.holds = r.tau_rel_fast <= r.bound + tol * std::max(1.0, r.bound);
  return r;
}

std::optional<KempeExchange> identify_kempe_exchange(const Graph& g, std::span<const Color> alpha,
                                                     std::span<const Color> beta) {
  if (alpha.size() != g.size() || beta.size() != g.size()) return std::nullopt;
  std::vector<Vertex> diff;
  for (Vertex u = 0; u < g.size(); ++u) {
    if (alpha[u] != beta[u]) diff.push_back(u);
  }
  if (diff.empty()) return std::nullopt;
  KempeExchange ex{{}, alpha[diff.front()], beta[diff.front()]};
  for (Vertex u : diff) {
    const bool swapped = (alpha[u] == ex.a && beta[u] == ex.b) || (alpha[u] == ex.b && beta[u] == ex.a);
    if (!swapped) return std::nullopt;
  }
  ex.chain = kempe_chain(g, alpha, diff.front(), ex.b);
  if (ex.chain != diff) return std::nullopt;
  return ex;
}

GlauberPaths kempe_to_glauber_paths(const Graph& g, std::size_t k, const PathDecomposition& pd,
                                    std::span<const Color> alpha, std::span<const Color> beta, std::size_t branch_cap) {
  const ListAssignment lists = uniform_lists(g, k);
  if (!is_proper(g, lists, alpha) || !is_proper(g, lists, beta)) {
    fail(ErrorCode::Improper, "path endpoints must be proper k-colourings");
  }
  if (pd.intervals.size() != g.size()) fail(ErrorCode::InvalidArgument, "path decomposition does not match the graph");
  if (branch_cap == 0) fail(ErrorCode::InvalidArgument, "branch cap must be positive");
  auto ex = identify_kempe_exchange(g, alpha, beta);
  if (!ex) fail(ErrorCode::InvalidArgument, "colourings do not differ by a single Kempe exchange");

  struct Action {
    Vertex v;
    bool detour;
  };
  std::vector<Action> actions;
  for (std::size_t i = 0; i < pd.length(); ++i) {
    for (Vertex v : ex->chain) {
      if (pd.intervals[v].first == i) actions.push_back({v, true});
    }
    for (Vertex v : ex->chain) {
      if (pd.intervals[v].second == i) actions.push_back({v, false});
    }
  }

  GlauberPaths out;
  out.exchange = *ex;
  std::vector<Coloring> path{Coloring(alpha.begin(), alpha.end())};
  Coloring cur = path.front();
  bool stop = false;
  auto holds_nbr = [&](Vertex v, Color c) {
    for (Vertex w : g.neighbors(v)) {
      if (cur[w] == c) return true;
    }
    return false;
  };
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (stop) return;
    if (idx == actions.size()) {
      if (!std::equal(cur.begin(), cur.end(), beta.begin())) fail(ErrorCode::Internal, "path does not end at beta");
      if (out.paths.size() == branch_cap) {
        out.truncated = true;
        stop = true;
        return;
      }
      out.paths.push_back(path);
      return;
    }
    const Action act = actions[idx];
    const Vertex v = act.v;
    const Color old = cur[v];
    if (act.detour) {
      bool any = false;
      for (Color c = 0; c < k && !stop; ++c) {
        if (c == alpha[v] || holds_nbr(v, c)) continue;
        any = true;
        cur[v] = c;
        path.push_back(cur);
        walk(idx + 1);
        path.pop_back();
        cur[v] = old;
      }
      if (!any) {
        fail(ErrorCode::Precondition, "no admissible intermediate colour for vertex " + std::to_string(v) +
                                          "; at least k - Delta - 1 possible choices requires k >= Delta + 2");
      }
    } else {
      if (cur[v] == beta[v]) {
        walk(idx + 1);
        return;
      }
      if (holds_nbr(v, beta[v])) fail(ErrorCode::Internal, "target recolouring is not proper");
      cur[v] = beta[v];
      path.push_back(cur);
      walk(idx + 1);
      path.pop_back();
      cur[v] = old;
    }
  };
  walk(0);
  return out;
}

PathSystem kempe_path_system(const Graph& g, std::size_t k, const PathDecomposition& pd, const EnumeratedChain& fast,
                             const EnumeratedChain& slow, std::size_t branch_cap) {
  PathSystem ps;
  for (std::size_t i = 0; i < slow.size(); ++i) {
    for (const auto& e : slow.row(i)) {
      if (e.col == i || e.value <= 0.0) continue;
      const auto gp = kempe_to_glauber_paths(g, k, pd, slow.space().at(i), slow.space().at(e.col), branch_cap);
      PathFamily fam{i, e.col, {}, gp.truncated};
      const double w = 1.0 / static_cast<double>(gp.paths.size());
      for (const auto& p : gp.paths) {
        WeightedPath wp;
        wp.weight = w;
        for (const auto& c : p) {
          auto idx = fast.space().index_of(c);
          if (!idx) fail(ErrorCode::Internal, "path leaves the fast chain's state space");
          wp.states.push_back(*idx);
        }
        fam.paths.push_back(std::move(wp));
      }
      ps.surrogate = ps.surrogate || gp.truncated;
      ps.families.push_back(std::move(fam));
    }
  }
  return ps;
}

GoodPairReport good_pair_ratio(const Graph& g, const ListAssignment& lists, Vertex v, Color c1, Color c2) {
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
  if (c1 == c2) fail(ErrorCode::InvalidArgument, "good pairs need two distinct colours");
  const std::size_t i1 = color_index(lists, v, c1), i2 = color_index(lists, v, c2);
  const BigInt total = count_colorings(g, lists);
  const auto by_color = count_by_color(g, lists, v);
  const BigInt& n1 = by_color[i1];
  const BigInt& n2 = by_color[i2];
  if (n1 == 0 || n2 == 0) fail(ErrorCode::Precondition, "a colour class at v is empty");
  const std::size_t n = g.size();
  GoodPairReport r;
  r.transition = Rational(pair_count(g, lists, v, c1, c2), n1) /
                 static_cast<unsigned>(n * lists.list(v).size());
  r.pi_source = Rational(n1, total);
  r.pi_target = Rational(n2, total);
  r.ratio_target = r.transition / r.pi_target;
  r.ratio_source = r.transition / r.pi_source;
  r.threshold = bounds_constants(g).k_good / static_cast<unsigned>(n);
  r.good = r.ratio_target >= r.threshold;
  r.good_source = r.ratio_source >= r.threshold;
  return r;
}

}  // namespace glab
