#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "glauberlab/coloring.hpp"
#include "glauberlab/graph.hpp"
#include "glauberlab/numeric.hpp"
#include "glauberlab/rng.hpp"

namespace glab {

/// What a single sampler step drew and whether it moved.
struct StepInfo {
  Vertex vertex = 0;
  Color color = 0;
  std::size_t chain_size = 0;  // Kempe only; 1 for Glauber
  bool accepted = false;
};

/// Deterministic Glauber move: recolour v with c iff no neighbour holds c.
Coloring glauber_apply(const Graph& g, std::span<const Color> sigma, Vertex v, Color c, bool* accepted = nullptr);

/// One Glauber step: v uniform on V, c uniform on L(v). Throws Improper on an
/// improper input colouring.
Coloring glauber_step(const Graph& g, const ListAssignment& lists, std::span<const Color> sigma, RngStream& rng,
                      StepInfo* info = nullptr);

/// Maximal connected set containing v coloured within {sigma(v), c}, sorted.
/// For c == sigma(v) this is {v} (the identity exchange).
std::vector<Vertex> kempe_chain(const Graph& g, std::span<const Color> sigma, Vertex v, Color c);

/// Swap colours a and b on the given vertices.
Coloring swap_colors(std::span<const Color> sigma, std::span<const Vertex> chain, Color a, Color b);

/// One Kempe step: (v, c) uniform on V x {0..k-1}; swap sigma(v) and c on the
/// chain with probability 1/|C|. Drawing c == sigma(v) is a no-op.
Coloring kempe_step(const Graph& g, std::size_t k, std::span<const Color> sigma, RngStream& rng,
                    StepInfo* info = nullptr);

/// Slot (v, c) of Kem(sigma). An empty chain is the empty exchange.
struct KemSlot {
  Vertex vertex = 0;
  Color color = 0;
  std::vector<Vertex> chain;
  Color from = 0;  // sigma(v)
  Color to = 0;    // c
  /// Probability of performing this slot's exchange: 1/(nk|C|), or 0 if empty.
  Rational exchange_weight;
  /// Probability of drawing the slot and leaving sigma unchanged.
  Rational idle_weight;

  bool empty() const noexcept { return chain.empty(); }
};

/// Exactly n*k slots, slot index v*k + c; all weights sum to 1.
std::vector<KemSlot> kem_set(const Graph& g, std::size_t k, std::span<const Color> sigma);

enum class ChainKind { Glauber, Kempe, Derived };
enum class NumericMode { Exact, Float };

const char* to_string(ChainKind kind);
const char* to_string(NumericMode mode);

/// One stored off-diagonal or diagonal entry. In exact mode the probability is
/// numerator / denominator of the owning chain.
struct MatrixEntry {
  std::size_t col = 0;
  double value = 0.0;
  Exact numerator = 0;
};

/// Explicit state space plus a row-stochastic transition matrix over it.
/// Rows are sorted by column and include the diagonal when it is nonzero.
class EnumeratedChain {
 public:
  EnumeratedChain(ChainKind kind, std::shared_ptr<const ColoringSpace> space, NumericMode mode, Exact denominator,
                  std::vector<std::vector<MatrixEntry>> rows, bool color_symmetric);

  ChainKind kind() const noexcept { return kind_; }
  NumericMode mode() const noexcept { return mode_; }
  const ColoringSpace& space() const noexcept { return *space_; }
  std::shared_ptr<const ColoringSpace> shared_space() const noexcept { return space_; }
  std::size_t size() const noexcept { return rows_.size(); }
  /// Common denominator in exact mode, 0 in float mode.
  const Exact& denominator() const noexcept { return denominator_; }
  /// True when permuting colour names commutes with the matrix (uniform lists).
  bool color_symmetric() const noexcept { return color_symmetric_; }

  std::span<const MatrixEntry> row(std::size_t i) const { return rows_[i]; }
  double probability(std::size_t i, std::size_t j) const;
  /// Exact entry; throws Precondition in float mode.
  Rational exact_probability(std::size_t i, std::size_t j) const;
  std::size_t nonzeros() const;

  /// Row-major dense copy.
  std::vector<double> dense() const;

  /// Largest |row sum - 1| and |column sum - 1|; 0 exactly in exact mode when stochastic.
  double stochastic_defect() const;
  /// Exact mode: exact comparison; float mode: within tol.
  bool is_symmetric(double tol = 1e-12) const;
  bool is_doubly_stochastic(double tol = 1e-12) const;
  /// Uniform pi satisfies pi P = pi.
  bool uniform_is_stationary(double tol = 1e-12) const;
  /// Connected components of the support graph (i ~ j iff P[i,j] > 0).
  std::size_t support_components() const;

 private:
  ChainKind kind_;
  std::shared_ptr<const ColoringSpace> space_;
  NumericMode mode_;
  Exact denominator_;
  std::vector<std::vector<MatrixEntry>> rows_;
  bool color_symmetric_;
};

inline constexpr std::size_t kExactStateLimit = 2000;

/// P[sigma -> eta] = 1/(n|L(v)|) when they differ exactly at v.
EnumeratedChain glauber_matrix(const Graph& g, const ListAssignment& lists, std::shared_ptr<const ColoringSpace> space);
EnumeratedChain glauber_matrix(const Graph& g, const ListAssignment& lists,
                               std::size_t cap = kDefaultEnumerationCap);

/// Aggregated Kempe exchange probabilities; throws InvalidArgument for
/// non-uniform lists.
EnumeratedChain kempe_matrix(const Graph& g, std::size_t k, std::shared_ptr<const ColoringSpace> space);
EnumeratedChain kempe_matrix(const Graph& g, std::size_t k, std::size_t cap = kDefaultEnumerationCap);

/// Same state space, every off-diagonal entry multiplied by 1/2.
EnumeratedChain halved_chain(const EnumeratedChain& chain);

/// Chain restricted to a subset of states: off-diagonals kept, diagonal
/// completes each row. `states` must be increasing.
EnumeratedChain restricted_chain(const EnumeratedChain& chain, std::span<const std::size_t> states);

enum class Dynamics { Glauber, Kempe };
const char* to_string(Dynamics d);

struct TraceSummary {
  Coloring final_state;
  std::size_t accepted = 0;
};

/// Runs `steps` sampler steps. With `trace`, writes one tab-separated line per
/// step: step, vertex, colour, accepted (0/1), state index (-1 without `space`).
TraceSummary run_sampler(const Graph& g, const ListAssignment& lists, Dynamics dynamics, Coloring start,
                         std::size_t steps, RngStream& rng, const ColoringSpace* space = nullptr,
                         std::ostream* trace = nullptr);

}  // namespace glab
