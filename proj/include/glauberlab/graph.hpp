#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace glab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
  /// and out-of-range endpoints throw InvalidArgument naming the pair.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges with u < v, sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  std::size_t max_degree_ = 0;
};

inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  return Graph::from_edges(n, edges);
}

/// A subgraph with its vertices relabelled 0..m-1; `original[i]` is the label
/// of vertex i in the parent graph.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);
InducedSubgraph remove_vertices(const Graph& g, std::span<const Vertex> removed);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_clique(const Graph& g, std::span<const Vertex> vertices);

// Small named graphs used by fixtures, the CLI and tests.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph empty_graph(std::size_t n);

}  // namespace glab
