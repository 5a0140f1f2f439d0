#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "glauberlab/coloring.hpp"
#include "glauberlab/decomposition.hpp"
#include "glauberlab/graph.hpp"
#include "glauberlab/rng.hpp"

namespace glab {

/// Kem(sigma) with one slot per (v, c), slot index v*k + c. Every distinct
/// Kempe exchange sits in exactly one slot: the one naming the chain's
/// earliest vertex u in the ordering together with u's new colour. All other
/// slots hold the empty exchange, so each exchange fires with probability
/// 1/(nk), the Kempe dynamics' rate.
struct CanonicalSlot {
  std::vector<Vertex> chain;  // empty: empty exchange
  Color a = 0;                // colour of the slot vertex before the swap
  Color b = 0;                // the slot colour
  bool empty() const noexcept { return chain.empty(); }
};

/// The exchange owned by slot (v, c) under `position` (position[v] = index
/// of v in the ordering).
CanonicalSlot canonical_slot(const Graph& g, const std::vector<std::size_t>& position, std::span<const Color> sigma,
                             Vertex v, Color c);
std::vector<CanonicalSlot> canonical_kem(const Graph& g, std::size_t k, const EliminationOrdering& peo,
                                         std::span<const Color> sigma);

/// First ordering position where x and y differ, or n when equal.
std::size_t disagreement_index(const EliminationOrdering& peo, std::span<const Color> x, std::span<const Color> y);

struct CoupledState {
  Coloring x;
  Coloring y;
  std::size_t disagreement = 0;
};

struct ExchangePairing {
  /// 0-based ordering position i of the first disagreement (n if none).
  std::size_t disagreement = 0;
  /// partner[s] = slot of Kem(Y) paired with slot s of Kem(X).
  std::vector<std::size_t> partner;
  std::vector<CanonicalSlot> x_slots;
  std::vector<CanonicalSlot> y_slots;
  /// Slot exchange touches the first i+1 ordered vertices (the K1 class).
  std::vector<bool> x_touching;
  std::vector<bool> y_touching;
  /// K1 slots owned before position i whose partner was checked to agree on
  /// the vertices before position i.
  std::size_t verified = 0;
  /// Slots recolouring the disagreement vertex, and nothing earlier, with the
  /// same colour in both copies.
  std::size_t coalescing = 0;
};

/// Identity pairing on slots, with the K1/K2 classification and the check
/// that paired K1 exchanges coincide on the agreeing prefix. Throws
/// Precondition when `peo` is not perfect, Internal if the check fails.
ExchangePairing pair_exchanges(const Graph& g, const EliminationOrdering& peo, std::span<const Color> x,
                               std::span<const Color> y, std::size_t k);

/// One coupled move: draw a slot uniformly from nk; apply it to both copies.
CoupledState coupled_step(const Graph& g, std::size_t k, const EliminationOrdering& peo,
                          const std::vector<std::size_t>& position, const CoupledState& state, RngStream& rng,
                          std::size_t* slot = nullptr);

struct CouplingRun {
  /// Coalescence time; empty when censored at max_steps.
  std::optional<std::size_t> coalescence;
  std::size_t steps = 0;
  std::size_t final_disagreement = 0;
  /// (step, index) whenever the disagreement index changes; starts with (0, i0).
  std::vector<std::pair<std::size_t, std::size_t>> index_changes;
  /// dwell[i] = steps spent with disagreement index i.
  std::vector<std::size_t> dwell;
  bool monotone = true;
  /// Steps taken while X != Y, and those that raised the disagreement index.
  std::size_t active_steps = 0;
  std::size_t progress_steps = 0;
  bool censored() const noexcept { return !coalescence.has_value(); }
};

/// Requires a perfect ordering, k >= omega + 1 and proper k-colourings. The
/// per-step progress floor (k - omega - 1)/(kn), and with it the omega n^2
/// bound, is only positive for k >= omega + 2.
CouplingRun run_coupling(const Graph& g, std::size_t k, const EliminationOrdering& peo, const Coloring& x0,
                         const Coloring& y0, RngStream& rng, std::size_t max_steps);

/// 100 * omega * n^2.
std::size_t default_max_steps(std::size_t omega, std::size_t n);

/// Replica r uses RngStream(seed, stream_base + r). Runs on up to `jobs`
/// threads; results are in replica order regardless of `jobs`.
std::vector<CouplingRun> run_coupling_batch(const Graph& g, std::size_t k, const EliminationOrdering& peo,
                                            const Coloring& x0, const Coloring& y0, std::uint64_t seed,
                                            std::uint64_t stream_base, std::size_t replicas, std::size_t max_steps,
                                            std::size_t jobs = 1);

struct StartPairStats {
  std::size_t replicas = 0;
  std::size_t censored = 0;
  double mean = 0.0;
  double sd = 0.0;
  /// Normal-approximation 95% interval for the mean.
  double ci_low = 0.0;
  double ci_high = 0.0;
};

StartPairStats summarize_runs(const std::vector<CouplingRun>& runs);

struct CouplingBound {
  std::vector<StartPairStats> pairs;
  std::size_t worst_pair = 0;
  double max_mean = 0.0;
  double max_mean_upper = 0.0;
  /// 4 * max_mean.
  double bound = 0.0;
  bool censored_present = false;
  std::optional<std::size_t> exact_tau;
  /// bound >= exact_tau, when the exact value is known.
  std::optional<bool> consistent;
};

/// Censored replicas count at their step budget and flag the bound as
/// lower-confidence.
CouplingBound coupling_mixing_bound(const std::vector<std::vector<CouplingRun>>& runs_per_pair,
                                    std::optional<std::size_t> exact_tau = std::nullopt);

/// Greedy colouring along the ordering with uniformly random admissible
/// colours; throws Precondition if some vertex has no admissible colour.
Coloring random_greedy_coloring(const Graph& g, std::size_t k, const EliminationOrdering& peo, RngStream& rng);

/// All ordered pairs of distinct proper colourings when |Omega| <= 50,
/// otherwise `random_pairs` random greedy pairs plus one pair differing at
/// every vertex.
std::vector<std::pair<Coloring, Coloring>> worst_case_grid(const Graph& g, std::size_t k,
                                                           const EliminationOrdering& peo, RngStream& rng,
                                                           std::size_t random_pairs);

/// Upper end of the Wilson score interval for a binomial proportion.
double wilson_upper(std::size_t successes, std::size_t trials, double z = 1.96);

}  // namespace glab
