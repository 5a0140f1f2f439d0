#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glauberlab/graph.hpp"

namespace glab {

/// Vertex ordering. "Perfect" here means: for every position i, the neighbours
/// of order[i] that appear earlier in the ordering form a clique.
struct EliminationOrdering {
  std::vector<Vertex> order;

  /// position[v] = index of v in `order`.
  std::vector<std::size_t> positions() const;
};

struct McsResult {
  /// Maximum-cardinality-search visit order. When `chordal` is true this is a
  /// perfect ordering in the sense above (the reverse of the classical
  /// elimination order).
  EliminationOrdering ordering;
  bool chordal = false;
  /// First vertex (in visit order) whose earlier neighbours are not a clique.
  std::optional<Vertex> violating_vertex;
};

/// Ties are broken towards the lowest vertex index.
McsResult maximum_cardinality_search(const Graph& g);

/// Throws InvalidArgument when `ord` is not a permutation of 0..n-1.
bool verify_peo(const Graph& g, const EliminationOrdering& ord);

using TreeEdge = std::pair<std::size_t, std::size_t>;

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<TreeEdge> edges;
  std::size_t width = 0;
};

/// A tree decomposition whose bags are the maximal cliques of a chordal graph.
struct CliqueTree {
  std::vector<std::vector<Vertex>> bags;
  std::vector<TreeEdge> edges;

  std::size_t size() const noexcept { return bags.size(); }
  std::size_t width() const;
  TreeDecomposition as_decomposition() const;
};

enum class TdViolation {
  None,
  NotATree,
  VertexOutOfRange,
  VertexUncovered,
  DisconnectedOccurrence,
  EdgeUncovered,
  WidthMismatch,
  PathInvariant,
};

const char* to_string(TdViolation v);

struct TdDiagnosis {
  bool valid = true;
  TdViolation violation = TdViolation::None;
  std::string message;
  /// Offending vertices (or the uncovered edge's endpoints).
  std::vector<Vertex> witness;
};

TdDiagnosis validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

/// Maximal cliques from MCS joined by a maximum-weight spanning tree on
/// intersection sizes. Throws NotChordal naming an MCS violation.
CliqueTree clique_tree(const Graph& g);

/// Node whose removal leaves components of size <= nodes/2; lowest index wins
/// ties. Throws InvalidArgument on an empty or disconnected tree.
std::size_t centroid_node(std::size_t node_count, const std::vector<TreeEdge>& edges);

struct PathDecomposition {
  std::vector<std::vector<Vertex>> bags;
  /// Per bag, disjoint clique parts whose union is the bag.
  std::vector<std::vector<std::vector<Vertex>>> clique_partition;
  /// Per vertex, inclusive [start, end] bag indices (0-based).
  std::vector<std::pair<std::size_t, std::size_t>> intervals;

  std::size_t length() const noexcept { return bags.size(); }
  std::size_t max_parts() const;
  std::size_t width() const;
  TreeDecomposition as_tree_decomposition() const;
};

/// Centroid recursion over the clique tree: recurse on the components of
/// G - S_u, concatenate, add S_u to every bag.
PathDecomposition balanced_path_decomposition(const Graph& g, const CliqueTree& ct);

/// True iff parts <= log2(tree_size) + 1, evaluated exactly as 2^(parts-1) <= tree_size.
bool clique_parts_within_bound(std::size_t parts, std::size_t tree_size);

/// Checks the path decomposition invariants: tree-decomposition validity,
/// contiguous intervals matching bag membership, clique parts partitioning
/// each bag, and the per-bag part bound against `tree_size`.
TdDiagnosis validate_path_decomposition(const Graph& g, const PathDecomposition& pd,
                                        std::size_t tree_size);

struct CliqueChromatic {
  std::size_t omega = 0;
  std::size_t chi = 0;
};

/// Exact clique number (branch and bound) and chromatic number (increasing k
/// with backtracking). Refuses graphs with more than `cap` vertices.
CliqueChromatic clique_and_chromatic_number(const Graph& g, std::size_t cap = 20);

/// 24 * (chi - 1).
std::size_t alpha_chi(std::size_t chi);

}  // namespace glab
