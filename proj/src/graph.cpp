#include "glauberlab/graph.hpp"

#include <algorithm>
#include <string>

#include "glauberlab/error.hpp"

namespace glab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NotChordal: return "graph is not chordal";
    case ErrorCode::CapExceeded: return "cap exceeded";
    case ErrorCode::Improper: return "improper colouring";
    case ErrorCode::NotErgodic: return "chain is not ergodic";
    case ErrorCode::Precondition: return "precondition violated";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::WeightDeficit: return "path weight deficit";
    case ErrorCode::Usage: return "usage error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.adjacency_.resize(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      fail(ErrorCode::InvalidArgument,
           "edge (" + std::to_string(u) + "," + std::to_string(v) +
               ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    }
    if (u == v) {
      fail(ErrorCode::InvalidArgument,
           "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is a self-loop");
    }
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  std::size_t degree_sum = 0;
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    degree_sum += nbrs.size();
    g.max_degree_ = std::max(g.max_degree_, nbrs.size());
  }
  g.edge_count_ = degree_sum / 2;
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<Vertex> original(keep.begin(), keep.end());
  std::sort(original.begin(), original.end());
  original.erase(std::unique(original.begin(), original.end()), original.end());
  constexpr Vertex kAbsent = ~Vertex{0};
  std::vector<Vertex> relabel(g.size(), kAbsent);
  for (Vertex i = 0; i < original.size(); ++i) {
    if (original[i] >= g.size()) {
      fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(original[i]) + " out of range");
    }
    relabel[original[i]] = i;
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (relabel[u] != kAbsent && relabel[v] != kAbsent) edges.emplace_back(relabel[u], relabel[v]);
  }
  return {Graph::from_edges(original.size(), edges), std::move(original)};
}

InducedSubgraph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<bool> drop(g.size(), false);
  for (Vertex v : removed) {
    if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
    drop[v] = true;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!drop[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> components;
  std::vector<bool> seen(g.size(), false);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : g.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_clique(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

Graph empty_graph(std::size_t n) { return Graph::from_edges(n, {}); }

}  // namespace glab
