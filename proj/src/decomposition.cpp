#include "glauberlab/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>

#include "glauberlab/error.hpp"

namespace glab {

namespace {

std::string vertex_list(const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vs[i]);
  }
  return s + "}";
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::vector<Vertex> earlier_neighbors(const Graph& g, Vertex v, const std::vector<std::size_t>& pos) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbors(v)) {
    if (pos[w] < pos[v]) out.push_back(w);
  }
  return out;
}

std::optional<Vertex> first_violation(const Graph& g, const EliminationOrdering& ord) {
  const auto pos = ord.positions();
  for (Vertex v : ord.order) {
    if (!is_clique(g, earlier_neighbors(g, v, pos))) return v;
  }
  return std::nullopt;
}

std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<std::size_t> EliminationOrdering::positions() const {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

McsResult maximum_cardinality_search(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> numbered(n, false);
  McsResult result;
  result.ordering.order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = 0;
    bool found = false;
    for (Vertex v = 0; v < n; ++v) {
      if (numbered[v]) continue;
      if (!found || weight[v] > weight[best]) {
        best = v;
        found = true;
      }
    }
    numbered[best] = true;
    result.ordering.order.push_back(best);
    for (Vertex w : g.neighbors(best)) {
      if (!numbered[w]) ++weight[w];
    }
  }
  result.violating_vertex = first_violation(g, result.ordering);
  result.chordal = !result.violating_vertex.has_value();
  return result;
}

bool verify_peo(const Graph& g, const EliminationOrdering& ord) {
  if (ord.order.size() != g.size()) {
    fail(ErrorCode::InvalidArgument, "ordering has " + std::to_string(ord.order.size()) +
                                         " entries for a graph on " + std::to_string(g.size()) +
                                         " vertices");
  }
  std::vector<bool> seen(g.size(), false);
  for (Vertex v : ord.order) {
    if (v >= g.size() || seen[v]) {
      fail(ErrorCode::InvalidArgument, "ordering is not a permutation (entry " + std::to_string(v) + ")");
    }
    seen[v] = true;
  }
  return !first_violation(g, ord).has_value();
}

std::size_t CliqueTree::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w == 0 ? 0 : w - 1;
}

TreeDecomposition CliqueTree::as_decomposition() const { return {bags, edges, width()}; }

const char* to_string(TdViolation v) {
  switch (v) {
    case TdViolation::None: return "none";
    case TdViolation::NotATree: return "not-a-tree";
    case TdViolation::VertexOutOfRange: return "vertex-out-of-range";
    case TdViolation::VertexUncovered: return "vertex-uncovered";
    case TdViolation::DisconnectedOccurrence: return "disconnected-occurrence";
    case TdViolation::EdgeUncovered: return "edge-uncovered";
    case TdViolation::WidthMismatch: return "width-mismatch";
    case TdViolation::PathInvariant: return "path-invariant";
  }
  return "unknown";
}

TdDiagnosis validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  auto bad = [](TdViolation kind, std::string msg, std::vector<Vertex> witness) {
    return TdDiagnosis{false, kind, std::move(msg), std::move(witness)};
  };
  const std::size_t nodes = td.bags.size();
  for (std::size_t i = 0; i < nodes; ++i) {
    for (Vertex v : td.bags[i]) {
      if (v >= g.size()) {
        return bad(TdViolation::VertexOutOfRange,
                   "bag " + std::to_string(i) + " contains vertex " + std::to_string(v), {v});
      }
    }
  }
  if (nodes == 0) {
    if (g.size() == 0) return {};
    return bad(TdViolation::VertexUncovered, "no bags for a nonempty graph", {0});
  }
  if (td.edges.size() != nodes - 1) {
    return bad(TdViolation::NotATree, std::to_string(td.edges.size()) + " tree edges for " +
                                          std::to_string(nodes) + " nodes",
               {});
  }
  DisjointSets ds(nodes);
  std::vector<std::vector<std::size_t>> tree_adj(nodes);
  for (const auto& [a, b] : td.edges) {
    if (a >= nodes || b >= nodes || !ds.unite(a, b)) {
      return bad(TdViolation::NotATree,
                 "tree edge (" + std::to_string(a) + "," + std::to_string(b) + ") is invalid or closes a cycle",
                 {});
    }
    tree_adj[a].push_back(b);
    tree_adj[b].push_back(a);
  }

  std::vector<std::vector<std::size_t>> holders(g.size());
  for (std::size_t i = 0; i < nodes; ++i) {
    std::vector<Vertex> bag = td.bags[i];
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    for (Vertex v : bag) holders[v].push_back(i);
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    if (holders[v].empty()) {
      return bad(TdViolation::VertexUncovered, "vertex " + std::to_string(v) + " is in no bag", {v});
    }
  }
  std::vector<int> mark(nodes, -1);
  for (Vertex v = 0; v < g.size(); ++v) {
    for (std::size_t node : holders[v]) mark[node] = static_cast<int>(v);
    std::vector<std::size_t> stack{holders[v].front()};
    std::size_t reached = 0;
    std::vector<bool> visited(nodes, false);
    visited[stack.back()] = true;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t y : tree_adj[x]) {
        if (!visited[y] && mark[y] == static_cast<int>(v)) {
          visited[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (reached != holders[v].size()) {
      return bad(TdViolation::DisconnectedOccurrence,
                 "bags containing vertex " + std::to_string(v) + " do not form a subtree", {v});
    }
  }
  for (const auto& [u, v] : g.edges()) {
    bool covered = false;
    for (std::size_t node : holders[u]) {
      const auto& bag = td.bags[node];
      if (std::find(bag.begin(), bag.end(), v) != bag.end()) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      return bad(TdViolation::EdgeUncovered,
                 "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag", {u, v});
    }
  }
  std::size_t largest = 0;
  for (const auto& bag : td.bags) largest = std::max(largest, bag.size());
  const std::size_t width = largest == 0 ? 0 : largest - 1;
  if (width != td.width) {
    return bad(TdViolation::WidthMismatch,
               "declared width " + std::to_string(td.width) + " but largest bag gives " + std::to_string(width),
               {});
  }
  return {};
}

CliqueTree clique_tree(const Graph& g) {
  const McsResult mcs = maximum_cardinality_search(g);
  if (!mcs.chordal) {
    fail(ErrorCode::NotChordal, "graph is not chordal: earlier neighbours of vertex " +
                                    std::to_string(*mcs.violating_vertex) + " in MCS order are not a clique");
  }
  const auto pos = mcs.ordering.positions();
  std::vector<std::vector<Vertex>> candidates;
  for (Vertex v : mcs.ordering.order) {
    auto c = earlier_neighbors(g, v, pos);
    c.push_back(v);
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }
  // A candidate is kept iff no other candidate strictly contains it; among
  // equal candidates the first one in MCS order is kept.
  CliqueTree ct;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto& a = candidates[i];
      const auto& b = candidates[j];
      if (b.size() < a.size()) continue;
      if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
      dominated = b.size() > a.size() || j < i;
    }
    if (!dominated) ct.bags.push_back(candidates[i]);
  }
  const std::size_t m = ct.bags.size();
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> weighted;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      weighted.emplace_back(sorted_intersection(ct.bags[i], ct.bags[j]).size(), i, j);
    }
  }
  std::stable_sort(weighted.begin(), weighted.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  DisjointSets ds(m);
  for (const auto& [w, i, j] : weighted) {
    if (ds.unite(i, j)) ct.edges.emplace_back(i, j);
  }
  return ct;
}

std::size_t centroid_node(std::size_t node_count, const std::vector<TreeEdge>& edges) {
  if (node_count == 0) fail(ErrorCode::InvalidArgument, "centroid of an empty tree");
  std::vector<std::vector<std::size_t>> adj(node_count);
  for (const auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) fail(ErrorCode::InvalidArgument, "tree edge out of range");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Iterative DFS from node 0 for subtree sizes.
  std::vector<std::size_t> parent(node_count, node_count), order;
  std::vector<bool> seen(node_count, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (std::size_t y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = x;
        stack.push_back(y);
      }
    }
  }
  if (order.size() != node_count || edges.size() != node_count - 1) {
    fail(ErrorCode::InvalidArgument, "centroid input is not a connected tree");
  }
  std::vector<std::size_t> subtree(node_count, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[*it] != node_count) subtree[parent[*it]] += subtree[*it];
  }
  for (std::size_t x = 0; x < node_count; ++x) {
    std::size_t largest = node_count - subtree[x];
    for (std::size_t y : adj[x]) {
      if (parent[y] == x) largest = std::max(largest, subtree[y]);
    }
    if (2 * largest <= node_count) return x;
  }
  fail(ErrorCode::Internal, "tree without centroid");
}

std::size_t PathDecomposition::max_parts() const {
  std::size_t best = 0;
  for (const auto& parts : clique_partition) best = std::max(best, parts.size());
  return best;
}

std::size_t PathDecomposition::width() const {
  std::size_t largest = 0;
  for (const auto& b : bags) largest = std::max(largest, b.size());
  return largest == 0 ? 0 : largest - 1;
}

TreeDecomposition PathDecomposition::as_tree_decomposition() const {
  TreeDecomposition td;
  td.bags = bags;
  for (std::size_t i = 0; i + 1 < bags.size(); ++i) td.edges.emplace_back(i, i + 1);
  td.width = width();
  return td;
}

namespace {

struct PartialBag {
  std::vector<std::vector<Vertex>> parts;
};

std::vector<PartialBag> decompose(const Graph& g, const std::vector<std::vector<Vertex>>& bags,
                                  const std::vector<TreeEdge>& edges) {
  if (bags.size() == 1) return {PartialBag{{bags.front()}}};

  const std::size_t u = centroid_node(bags.size(), edges);
  const auto& separator = bags[u];

  std::vector<Vertex> rest;
  for (const auto& bag : bags) rest.insert(rest.end(), bag.begin(), bag.end());
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  std::vector<Vertex> remaining;
  std::set_difference(rest.begin(), rest.end(), separator.begin(), separator.end(),
                      std::back_inserter(remaining));
  if (remaining.empty()) return {PartialBag{{separator}}};

  const InducedSubgraph sub = induced_subgraph(g, remaining);
  std::vector<PartialBag> out;
  for (const auto& local : connected_components(sub.graph)) {
    std::vector<Vertex> component;
    for (Vertex w : local) component.push_back(sub.original[w]);
    // Restrict the clique tree to the component; the nodes that meet it form
    // a subtree of one branch of T - u.
    std::vector<std::size_t> relabel(bags.size(), bags.size());
    std::vector<std::vector<Vertex>> child_bags;
    for (std::size_t node = 0; node < bags.size(); ++node) {
      auto meet = sorted_intersection(bags[node], component);
      if (meet.empty()) continue;
      relabel[node] = child_bags.size();
      child_bags.push_back(std::move(meet));
    }
    std::vector<TreeEdge> child_edges;
    for (const auto& [a, b] : edges) {
      if (relabel[a] != bags.size() && relabel[b] != bags.size()) child_edges.emplace_back(relabel[a], relabel[b]);
    }
    for (auto& piece : decompose(g, child_bags, child_edges)) out.push_back(std::move(piece));
  }
  for (auto& bag : out) bag.parts.insert(bag.parts.begin(), separator);
  return out;
}

}  // namespace

PathDecomposition balanced_path_decomposition(const Graph& g, const CliqueTree& ct) {
  const TdDiagnosis diag = validate_tree_decomposition(g, ct.as_decomposition());
  if (!diag.valid) fail(ErrorCode::InvalidArgument, "invalid clique tree: " + diag.message);
  for (std::size_t i = 0; i < ct.bags.size(); ++i) {
    if (!is_clique(g, ct.bags[i])) {
      fail(ErrorCode::InvalidArgument, "invalid clique tree: bag " + std::to_string(i) + " is not a clique");
    }
  }
  PathDecomposition pd;
  if (g.size() == 0) return pd;

  std::vector<std::vector<Vertex>> bags;
  for (auto b : ct.bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    bags.push_back(std::move(b));
  }
  for (auto& partial : decompose(g, bags, ct.edges)) {
    std::vector<Vertex> bag;
    for (const auto& part : partial.parts) bag.insert(bag.end(), part.begin(), part.end());
    std::sort(bag.begin(), bag.end());
    pd.bags.push_back(std::move(bag));
    pd.clique_partition.push_back(std::move(partial.parts));
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  pd.intervals.assign(g.size(), {kUnset, kUnset});
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    for (Vertex v : pd.bags[i]) {
      if (pd.intervals[v].first == kUnset) pd.intervals[v].first = i;
      pd.intervals[v].second = i;
    }
  }
  return pd;
}

bool clique_parts_within_bound(std::size_t parts, std::size_t tree_size) {
  if (parts == 0) return true;
  if (parts - 1 >= 63) return false;
  return (std::size_t{1} << (parts - 1)) <= tree_size;
}

TdDiagnosis validate_path_decomposition(const Graph& g, const PathDecomposition& pd, std::size_t tree_size) {
  TdDiagnosis diag = validate_tree_decomposition(g, pd.as_tree_decomposition());
  if (!diag.valid) return diag;
  auto bad = [](std::string msg, std::vector<Vertex> witness) {
    return TdDiagnosis{false, TdViolation::PathInvariant, std::move(msg), std::move(witness)};
  };
  if (pd.intervals.size() != g.size() || pd.clique_partition.size() != pd.bags.size()) {
    return bad("interval or partition table has the wrong size", {});
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto [lo, hi] = pd.intervals[v];
    for (std::size_t i = 0; i < pd.bags.size(); ++i) {
      const bool inside = lo <= i && i <= hi;
      const bool present = std::binary_search(pd.bags[i].begin(), pd.bags[i].end(), v);
      if (inside != present) {
        return bad("interval of vertex " + std::to_string(v) + " disagrees with bag " + std::to_string(i), {v});
      }
    }
  }
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    std::vector<Vertex> joined;
    for (const auto& part : pd.clique_partition[i]) {
      if (!is_clique(g, part)) return bad("part " + vertex_list(part) + " of bag " + std::to_string(i) + " is not a clique", part);
      joined.insert(joined.end(), part.begin(), part.end());
    }
    std::sort(joined.begin(), joined.end());
    if (joined != pd.bags[i]) return bad("parts of bag " + std::to_string(i) + " do not partition it", {});
    if (!clique_parts_within_bound(pd.clique_partition[i].size(), tree_size)) {
      return bad("bag " + std::to_string(i) + " has " + std::to_string(pd.clique_partition[i].size()) +
                     " clique parts, above log2(" + std::to_string(tree_size) + ")+1",
                 {});
    }
  }
  return diag;
}

namespace {

void grow_clique(const Graph& g, std::vector<Vertex>& current, std::vector<Vertex> candidates, std::size_t& best) {
  if (current.size() > best) best = current.size();
  while (!candidates.empty()) {
    if (current.size() + candidates.size() <= best) return;
    const Vertex v = candidates.back();
    candidates.pop_back();
    std::vector<Vertex> next;
    for (Vertex w : candidates) {
      if (g.adjacent(v, w)) next.push_back(w);
    }
    current.push_back(v);
    grow_clique(g, current, std::move(next), best);
    current.pop_back();
  }
}

bool colourable(const Graph& g, const std::vector<Vertex>& order, std::size_t k, std::size_t idx,
                std::vector<int>& colour, int used) {
  if (idx == order.size()) return true;
  const Vertex v = order[idx];
  const int limit = std::min<int>(static_cast<int>(k), used + 1);
  for (int c = 0; c < limit; ++c) {
    bool ok = true;
    for (Vertex w : g.neighbors(v)) {
      if (colour[w] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    colour[v] = c;
    if (colourable(g, order, k, idx + 1, colour, std::max(used, c + 1))) return true;
    colour[v] = -1;
  }
  return false;
}

}  // namespace

CliqueChromatic clique_and_chromatic_number(const Graph& g, std::size_t cap) {
  if (g.size() > cap) {
    fail(ErrorCode::CapExceeded, "exact clique/chromatic computation is capped at " + std::to_string(cap) +
                                     " vertices (graph has " + std::to_string(g.size()) + ")");
  }
  CliqueChromatic out;
  if (g.size() == 0) return out;

  std::vector<Vertex> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Vertex> current;
  grow_clique(g, current, all, out.omega);

  // Colour high-degree vertices first.
  auto order = maximum_cardinality_search(g).ordering.order;
  for (std::size_t k = std::max<std::size_t>(out.omega, 1);; ++k) {
    std::vector<int> colour(g.size(), -1);
    if (colourable(g, order, k, 0, colour, 0)) {
      out.chi = k;
      break;
    }
  }
  const McsResult mcs = maximum_cardinality_search(g);
  if (mcs.chordal) {
    const std::size_t largest = clique_tree(g).width() + 1;
    if (out.omega != out.chi || out.omega != largest) {
      fail(ErrorCode::Internal, "chordal graph with omega=" + std::to_string(out.omega) +
                                    ", chi=" + std::to_string(out.chi) + ", largest bag " + std::to_string(largest));
    }
  }
  return out;
}

std::size_t alpha_chi(std::size_t chi) { return chi == 0 ? 0 : 24 * (chi - 1); }

}  // namespace glab
