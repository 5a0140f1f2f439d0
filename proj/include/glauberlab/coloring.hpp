#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "glauberlab/graph.hpp"
#include "glauberlab/numeric.hpp"

namespace glab {

using Color = std::uint32_t;
using Coloring = std::vector<Color>;

/// Per-vertex colour lists over dense colours 0..C-1, kept sorted and unique.
class ListAssignment {
 public:
  ListAssignment() = default;
  explicit ListAssignment(std::vector<std::vector<Color>> lists);

  std::size_t size() const noexcept { return lists_.size(); }
  std::span<const Color> list(Vertex v) const { return lists_[v]; }
  bool contains(Vertex v, Color c) const;

  /// |L(v)| >= deg(v) + extra for every vertex.
  bool satisfies_degree_plus(const Graph& g, std::size_t extra) const;
  bool is_deg_plus_one(const Graph& g) const { return satisfies_degree_plus(g, 1); }
  bool is_deg_plus_two(const Graph& g) const { return satisfies_degree_plus(g, 2); }

  /// k when every list is exactly {0..k-1}.
  std::optional<std::size_t> uniform_size() const;
  /// One more than the largest colour in any list.
  std::size_t palette_size() const;

  const std::vector<std::vector<Color>>& lists() const noexcept { return lists_; }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

 private:
  std::vector<std::vector<Color>> lists_;
};

ListAssignment uniform_lists(const Graph& g, std::size_t k);

/// List membership at every vertex and no monochromatic edge.
bool is_proper(const Graph& g, const ListAssignment& lists, std::span<const Color> colors);
/// Properness ignoring lists (for uniform-colour dynamics).
bool is_proper(const Graph& g, std::span<const Color> colors);
std::optional<Edge> monochromatic_edge(const Graph& g, std::span<const Color> colors);

/// All proper L-colourings in lexicographic order (vertex 0 most significant,
/// colours ascending), stored contiguously.
class ColoringSpace {
 public:
  ColoringSpace(std::size_t vertices, std::vector<Color> flat);

  std::size_t size() const noexcept { return count_; }
  std::size_t vertex_count() const noexcept { return vertices_; }
  std::span<const Color> at(std::size_t index) const {
    return {flat_.data() + index * vertices_, vertices_};
  }
  Coloring coloring(std::size_t index) const {
    auto s = at(index);
    return {s.begin(), s.end()};
  }
  /// Binary search in the lexicographic order.
  std::optional<std::size_t> index_of(std::span<const Color> coloring) const;

  friend bool operator==(const ColoringSpace&, const ColoringSpace&) = default;

 private:
  std::size_t vertices_ = 0;
  std::size_t count_ = 0;
  std::vector<Color> flat_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 200000;

/// Throws CapExceeded (with a lower bound on |Omega|) when more than `cap`
/// colourings exist.
ColoringSpace enumerate_colorings(const Graph& g, const ListAssignment& lists,
                                  std::size_t cap = kDefaultEnumerationCap);

/// Exact |Omega_{G,L}|; components are counted separately and multiplied.
BigInt count_colorings(const Graph& g, const ListAssignment& lists);

/// Entry i = number of L-colourings with v coloured list(v)[i].
std::vector<BigInt> count_by_color(const Graph& g, const ListAssignment& lists, Vertex v);

using PartialColoring = std::vector<std::pair<Vertex, Color>>;

struct RestrictedLists {
  InducedSubgraph subgraph;  // G - S
  ListAssignment lists;      // L^{S,sigma}, indexed by subgraph vertices
};

/// L^{S,sigma}(v) = L(v) minus the colours sigma puts on N(v) within S.
/// Throws Improper naming the offending edge or list violation.
RestrictedLists restrict_lists(const Graph& g, const ListAssignment& lists, const PartialColoring& sigma);

/// Lists re-indexed onto an induced subgraph.
ListAssignment lists_on(const InducedSubgraph& sub, const ListAssignment& lists);

}  // namespace glab
