#include "glauberlab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "glauberlab/dynamics.hpp"
#include "glauberlab/error.hpp"

namespace glab {

namespace {

void require_perfect(const Graph& g, const EliminationOrdering& peo) {
  if (!verify_peo(g, peo)) fail(ErrorCode::Precondition, "ordering is not perfect; the exchange pairing needs one");
}

void require_k_coloring(const Graph& g, std::size_t k, std::span<const Color> c, const char* name) {
  if (c.size() != g.size()) fail(ErrorCode::InvalidArgument, std::string(name) + " has the wrong length");
  for (Color x : c) {
    if (x >= k) fail(ErrorCode::Improper, std::string(name) + " uses colour " + std::to_string(x) + " >= k");
  }
  if (auto e = monochromatic_edge(g, c)) {
    fail(ErrorCode::Improper, std::string(name) + " has monochromatic edge (" + std::to_string(e->first) + "," +
                                  std::to_string(e->second) + ")");
  }
}

// Clique number of a graph with a perfect ordering: 1 + most earlier neighbours.
std::size_t omega_from_ordering(const Graph& g, const std::vector<std::size_t>& position) {
  std::size_t omega = g.size() == 0 ? 0 : 1;
  for (Vertex v = 0; v < g.size(); ++v) {
    std::size_t earlier = 0;
    for (Vertex w : g.neighbors(v)) earlier += position[w] < position[v] ? 1 : 0;
    omega = std::max(omega, earlier + 1);
  }
  return omega;
}

Coloring apply_slot(std::span<const Color> sigma, const CanonicalSlot& s) {
  if (s.empty()) return Coloring(sigma.begin(), sigma.end());
  return swap_colors(sigma, s.chain, s.a, s.b);
}

std::size_t earliest(const std::vector<Vertex>& chain, const std::vector<std::size_t>& position) {
  std::size_t best = position[chain.front()];
  for (Vertex u : chain) best = std::min(best, position[u]);
  return best;
}

}  // namespace

CanonicalSlot canonical_slot(const Graph& g, const std::vector<std::size_t>& position, std::span<const Color> sigma,
                             Vertex v, Color c) {
  if (c == sigma[v]) return {};
  auto chain = kempe_chain(g, sigma, v, c);
  if (earliest(chain, position) != position[v]) return {};
  return {std::move(chain), sigma[v], c};
}

std::vector<CanonicalSlot> canonical_kem(const Graph& g, std::size_t k, const EliminationOrdering& peo,
                                         std::span<const Color> sigma) {
  const auto position = peo.positions();
  std::vector<CanonicalSlot> slots;
  slots.reserve(g.size() * k);
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Color c = 0; c < k; ++c) slots.push_back(canonical_slot(g, position, sigma, v, c));
  }
  return slots;
}

std::size_t disagreement_index(const EliminationOrdering& peo, std::span<const Color> x, std::span<const Color> y) {
  for (std::size_t i = 0; i < peo.order.size(); ++i) {
    if (x[peo.order[i]] != y[peo.order[i]]) return i;
  }
  return peo.order.size();
}

ExchangePairing pair_exchanges(const Graph& g, const EliminationOrdering& peo, std::span<const Color> x,
                               std::span<const Color> y, std::size_t k) {
  require_perfect(g, peo);
  require_k_coloring(g, k, x, "X");
  require_k_coloring(g, k, y, "Y");
  const auto position = peo.positions();
  ExchangePairing p;
  p.disagreement = disagreement_index(peo, x, y);
  p.x_slots = canonical_kem(g, k, peo, x);
  p.y_slots = canonical_kem(g, k, peo, y);
  const std::size_t slots = p.x_slots.size();
  p.partner.resize(slots);
  p.x_touching.resize(slots);
  p.y_touching.resize(slots);
  const std::size_t i = p.disagreement;
  auto prefix = [&](const std::vector<Vertex>& chain) {
    std::vector<Vertex> out;
    for (Vertex u : chain) {
      if (position[u] < i) out.push_back(u);
    }
    return out;
  };
  for (std::size_t s = 0; s < slots; ++s) {
    p.partner[s] = s;
    const auto v = static_cast<Vertex>(s / k);
    const CanonicalSlot& sx = p.x_slots[s];
    const CanonicalSlot& sy = p.y_slots[s];
    p.x_touching[s] = !sx.empty() && position[v] <= i;
    p.y_touching[s] = !sy.empty() && position[v] <= i;
    if (position[v] < i && (!sx.empty() || !sy.empty())) {
      if (sx.empty() || sy.empty() || prefix(sx.chain) != prefix(sy.chain) || sx.a != sy.a) {
        fail(ErrorCode::Internal, "paired exchanges differ on the agreeing prefix at slot " + std::to_string(s));
      }
      ++p.verified;
    }
    if (i < g.size() && position[v] == i && !sx.empty() && !sy.empty()) ++p.coalescing;
  }
  return p;
}

CoupledState coupled_step(const Graph& g, std::size_t k, const EliminationOrdering& peo,
                          const std::vector<std::size_t>& position, const CoupledState& state, RngStream& rng,
                          std::size_t* slot) {
  const std::size_t s = rng.below(g.size() * k);
  if (slot) *slot = s;
  const auto v = static_cast<Vertex>(s / k);
  const auto c = static_cast<Color>(s % k);
  CoupledState next;
  next.x = apply_slot(state.x, canonical_slot(g, position, state.x, v, c));
  if (state.x == state.y) {
    next.y = next.x;
  } else {
    next.y = apply_slot(state.y, canonical_slot(g, position, state.y, v, c));
  }
  next.disagreement = disagreement_index(peo, next.x, next.y);
  return next;
}

CouplingRun run_coupling(const Graph& g, std::size_t k, const EliminationOrdering& peo, const Coloring& x0,
                         const Coloring& y0, RngStream& rng, std::size_t max_steps) {
  require_perfect(g, peo);
  require_k_coloring(g, k, x0, "X0");
  require_k_coloring(g, k, y0, "Y0");
  const auto position = peo.positions();
  const std::size_t omega = omega_from_ordering(g, position);
  if (k < omega + 1) {
    fail(ErrorCode::Precondition, "coupling needs k >= omega + 1 (k = " + std::to_string(k) +
                                      ", omega = " + std::to_string(omega) + ")");
  }
  CouplingRun run;
  const std::size_t n = g.size();
  CoupledState st{x0, y0, disagreement_index(peo, x0, y0)};
  run.dwell.assign(n + 1, 0);
  run.index_changes.emplace_back(0, st.disagreement);
  while (st.disagreement < n && run.steps < max_steps) {
    const std::size_t before = st.disagreement;
    st = coupled_step(g, k, peo, position, st, rng);
    ++run.steps;
    ++run.dwell[before];
    ++run.active_steps;
    if (st.disagreement < before) run.monotone = false;
    if (st.disagreement > before) ++run.progress_steps;
    if (st.disagreement != before) run.index_changes.emplace_back(run.steps, st.disagreement);
  }
  run.final_disagreement = st.disagreement;
  if (st.disagreement == n) run.coalescence = run.steps;
  return run;
}

std::size_t default_max_steps(std::size_t omega, std::size_t n) { return 100 * std::max<std::size_t>(omega, 1) * n * n; }

std::vector<CouplingRun> run_coupling_batch(const Graph& g, std::size_t k, const EliminationOrdering& peo,
                                            const Coloring& x0, const Coloring& y0, std::uint64_t seed,
                                            std::uint64_t stream_base, std::size_t replicas, std::size_t max_steps,
                                            std::size_t jobs) {
  std::vector<CouplingRun> out(replicas);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t r = first; r < replicas; r += stride) {
      RngStream rng(seed, stream_base + r);
      out[r] = run_coupling(g, k, peo, x0, y0, rng, max_steps);
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(replicas, 1));
  if (jobs == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t j = 0; j < jobs; ++j) {
    threads.emplace_back([&, j] {
      try {
        work(j, jobs);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

StartPairStats summarize_runs(const std::vector<CouplingRun>& runs) {
  StartPairStats s;
  s.replicas = runs.size();
  if (runs.empty()) return s;
  double sum = 0.0;
  for (const auto& r : runs) {
    sum += static_cast<double>(r.coalescence.value_or(r.steps));
    if (r.censored()) ++s.censored;
  }
  s.mean = sum / static_cast<double>(runs.size());
  double ss = 0.0;
  for (const auto& r : runs) {
    const double d = static_cast<double>(r.coalescence.value_or(r.steps)) - s.mean;
    ss += d * d;
  }
  s.sd = runs.size() > 1 ? std::sqrt(ss / static_cast<double>(runs.size() - 1)) : 0.0;
  const double half = 1.96 * s.sd / std::sqrt(static_cast<double>(runs.size()));
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

CouplingBound coupling_mixing_bound(const std::vector<std::vector<CouplingRun>>& runs_per_pair,
                                    std::optional<std::size_t> exact_tau) {
  if (runs_per_pair.empty()) fail(ErrorCode::InvalidArgument, "no coupling runs to summarise");
  CouplingBound b;
  for (std::size_t i = 0; i < runs_per_pair.size(); ++i) {
    if (runs_per_pair[i].empty()) fail(ErrorCode::InvalidArgument, "start pair without replicas");
    auto s = summarize_runs(runs_per_pair[i]);
    b.censored_present = b.censored_present || s.censored > 0;
    if (i == 0 || s.mean > b.max_mean) {
      b.max_mean = s.mean;
      b.worst_pair = i;
    }
    b.max_mean_upper = std::max(b.max_mean_upper, s.ci_high);
    b.pairs.push_back(s);
  }
  b.bound = 4.0 * b.max_mean;
  b.exact_tau = exact_tau;
  if (exact_tau) b.consistent = b.bound >= static_cast<double>(*exact_tau);
  return b;
}

Coloring random_greedy_coloring(const Graph& g, std::size_t k, const EliminationOrdering& peo, RngStream& rng) {
  constexpr Color kNone = ~Color{0};
  Coloring c(g.size(), kNone);
  std::vector<Color> options;
  for (Vertex v : peo.order) {
    options.clear();
    for (Color x = 0; x < k; ++x) {
      bool used = false;
      for (Vertex w : g.neighbors(v)) used = used || c[w] == x;
      if (!used) options.push_back(x);
    }
    if (options.empty()) fail(ErrorCode::Precondition, "greedy colouring ran out of colours at vertex " + std::to_string(v));
    c[v] = options[rng.below(options.size())];
  }
  return c;
}

std::vector<std::pair<Coloring, Coloring>> worst_case_grid(const Graph& g, std::size_t k,
                                                           const EliminationOrdering& peo, RngStream& rng,
                                                           std::size_t random_pairs) {
  const ListAssignment lists = uniform_lists(g, k);
  std::vector<std::pair<Coloring, Coloring>> grid;
  if (count_colorings(g, lists) <= 50) {
    const auto space = enumerate_colorings(g, lists);
    for (std::size_t i = 0; i < space.size(); ++i) {
      for (std::size_t j = 0; j < space.size(); ++j) {
        if (i != j) grid.emplace_back(space.coloring(i), space.coloring(j));
      }
    }
    return grid;
  }
  for (std::size_t r = 0; r < random_pairs; ++r) {
    Coloring x = random_greedy_coloring(g, k, peo, rng);
    Coloring y = random_greedy_coloring(g, k, peo, rng);
    for (int tries = 0; x == y && tries < 16; ++tries) y = random_greedy_coloring(g, k, peo, rng);
    grid.emplace_back(std::move(x), std::move(y));
  }
  // Y differs from X at every vertex: greedy along the ordering avoiding X(v).
  Coloring x = random_greedy_coloring(g, k, peo, rng);
  Coloring y(g.size(), ~Color{0});
  for (Vertex v : peo.order) {
    for (Color c = 0; c < k; ++c) {
      if (c == x[v]) continue;
      bool used = false;
      for (Vertex w : g.neighbors(v)) used = used || y[w] == c;
      if (!used) {
        y[v] = c;
        break;
      }
    }
    if (y[v] == ~Color{0}) fail(ErrorCode::Precondition, "no colour differing from X at vertex " + std::to_string(v));
  }
  grid.emplace_back(std::move(x), std::move(y));
  return grid;
}

double wilson_upper(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return 1.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (centre + spread) / (1.0 + z2 / n));
}

}  // namespace glab
