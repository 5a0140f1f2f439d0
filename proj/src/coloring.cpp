#include "glauberlab/coloring.hpp"

#include <algorithm>
#include <string>

#include "glauberlab/decomposition.hpp"
#include "glauberlab/error.hpp"

namespace glab {

std::string to_string(const Rational& x) {
  std::string s = boost::multiprecision::numerator(x).str();
  const BigInt den = boost::multiprecision::denominator(x);
  if (den != 1) s += "/" + den.str();
  return s;
}

std::string to_string(const Exact& x) { return x.str(); }

Rational inverse_power_of_two(unsigned e) {
  BigInt den = 1;
  den <<= e;
  return Rational(BigInt(1), den);
}

ListAssignment::ListAssignment(std::vector<std::vector<Color>> lists) : lists_(std::move(lists)) {
  for (auto& l : lists_) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
}

bool ListAssignment::contains(Vertex v, Color c) const {
  return std::binary_search(lists_[v].begin(), lists_[v].end(), c);
}

bool ListAssignment::satisfies_degree_plus(const Graph& g, std::size_t extra) const {
  if (lists_.size() != g.size()) return false;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (lists_[v].size() < g.degree(v) + extra) return false;
  }
  return true;
}

std::optional<std::size_t> ListAssignment::uniform_size() const {
  if (lists_.empty()) return std::nullopt;
  const std::size_t k = lists_.front().size();
  for (const auto& l : lists_) {
    if (l.size() != k) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) {
      if (l[i] != i) return std::nullopt;
    }
  }
  return k;
}

std::size_t ListAssignment::palette_size() const {
  std::size_t p = 0;
  for (const auto& l : lists_) {
    if (!l.empty()) p = std::max<std::size_t>(p, l.back() + 1);
  }
  return p;
}

ListAssignment uniform_lists(const Graph& g, std::size_t k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "uniform lists need k >= 1");
  std::vector<Color> all(k);
  for (Color c = 0; c < k; ++c) all[c] = c;
  return ListAssignment(std::vector<std::vector<Color>>(g.size(), all));
}

std::optional<Edge> monochromatic_edge(const Graph& g, std::span<const Color> colors) {
  for (Vertex u = 0; u < g.size(); ++u) {
    for (Vertex w : g.neighbors(u)) {
      if (u < w && colors[u] == colors[w]) return Edge{u, w};
    }
  }
  return std::nullopt;
}

bool is_proper(const Graph& g, std::span<const Color> colors) {
  return colors.size() == g.size() && !monochromatic_edge(g, colors);
}

bool is_proper(const Graph& g, const ListAssignment& lists, std::span<const Color> colors) {
  if (colors.size() != g.size() || lists.size() != g.size()) return false;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!lists.contains(v, colors[v])) return false;
  }
  return !monochromatic_edge(g, colors);
}

ColoringSpace::ColoringSpace(std::size_t vertices, std::vector<Color> flat)
    : vertices_(vertices), flat_(std::move(flat)) {
  count_ = vertices_ == 0 ? 1 : flat_.size() / vertices_;
}

std::optional<std::size_t> ColoringSpace::index_of(std::span<const Color> coloring) const {
  if (coloring.size() != vertices_) return std::nullopt;
  if (vertices_ == 0) return 0;
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto s = at(mid);
    if (std::lexicographical_compare(s.begin(), s.end(), coloring.begin(), coloring.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count_ && std::equal(coloring.begin(), coloring.end(), at(lo).begin())) return lo;
  return std::nullopt;
}

namespace {

constexpr Color kUncoloured = ~Color{0};

// Backtracking over a fixed vertex order; each vertex only checks neighbours
// that come earlier in the order.
class Backtracker {
 public:
  Backtracker(const Graph& g, const ListAssignment& lists, std::vector<Vertex> order)
      : lists_(lists), order_(std::move(order)), colour_(g.size(), kUncoloured) {
    std::vector<std::size_t> pos(g.size(), g.size());
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    earlier_.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (Vertex w : g.neighbors(order_[i])) {
        if (pos[w] < i) earlier_[i].push_back(w);
      }
    }
  }

  bool allowed(std::size_t idx, Color c) const {
    for (Vertex w : earlier_[idx]) {
      if (colour_[w] == c) return false;
    }
    return true;
  }

  std::uint64_t count(std::size_t idx) {
    const Vertex v = order_[idx];
    std::uint64_t total = 0;
    if (idx + 1 == order_.size()) {
      for (Color c : lists_.list(v)) total += allowed(idx, c) ? 1 : 0;
      return total;
    }
    for (Color c : lists_.list(v)) {
      if (!allowed(idx, c)) continue;
      colour_[v] = c;
      const std::uint64_t sub = count(idx + 1);
      if (__builtin_add_overflow(total, sub, &total)) {
        fail(ErrorCode::CapExceeded, "component colouring count exceeds 64 bits");
      }
    }
    colour_[v] = kUncoloured;
    return total;
  }

  /// Count with order_[0] pinned to colour c.
  std::uint64_t count_pinned(Color c) {
    if (!lists_.contains(order_[0], c)) return 0;
    if (order_.size() == 1) return 1;
    colour_[order_[0]] = c;
    const std::uint64_t r = count(1);
    colour_[order_[0]] = kUncoloured;
    return r;
  }

  template <typename Visit>
  void enumerate(std::size_t idx, Visit&& visit) {
    if (idx == order_.size()) {
      visit(colour_);
      return;
    }
    const Vertex v = order_[idx];
    for (Color c : lists_.list(v)) {
      if (!allowed(idx, c)) continue;
      colour_[v] = c;
      enumerate(idx + 1, visit);
    }
    colour_[v] = kUncoloured;
  }

 private:
  const ListAssignment& lists_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> earlier_;
  std::vector<Color> colour_;
};

// Component vertices in an MCS-like order starting at `first`: each next vertex
// has the most already-placed neighbours, which keeps pruning tight.
std::vector<Vertex> counting_order(const Graph& g, const std::vector<Vertex>& component, Vertex first) {
  std::vector<Vertex> order{first};
  std::vector<std::size_t> weight(g.size(), 0);
  std::vector<bool> placed(g.size(), false), member(g.size(), false);
  for (Vertex v : component) member[v] = true;
  placed[first] = true;
  for (Vertex w : g.neighbors(first)) ++weight[w];
  while (order.size() < component.size()) {
    Vertex best = 0;
    bool found = false;
    for (Vertex v : component) {
      if (placed[v]) continue;
      if (!found || weight[v] > weight[best]) {
        best = v;
        found = true;
      }
    }
    placed[best] = true;
    order.push_back(best);
    for (Vertex w : g.neighbors(best)) {
      if (member[w]) ++weight[w];
    }
  }
  return order;
}

void check_lists(const Graph& g, const ListAssignment& lists) {
  if (lists.size() != g.size()) {
    fail(ErrorCode::InvalidArgument, "list assignment covers " + std::to_string(lists.size()) +
                                         " vertices, graph has " + std::to_string(g.size()));
  }
}

}  // namespace

BigInt count_colorings(const Graph& g, const ListAssignment& lists) {
  check_lists(g, lists);
  BigInt total = 1;
  for (const auto& comp : connected_components(g)) {
    Backtracker bt(g, lists, counting_order(g, comp, comp.front()));
    const std::uint64_t c = bt.count(0);
    if (c == 0) return 0;
    total *= c;
  }
  return total;
}

std::vector<BigInt> count_by_color(const Graph& g, const ListAssignment& lists, Vertex v) {
  check_lists(g, lists);
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
  BigInt others = 1;
  std::vector<Vertex> own;
  for (const auto& comp : connected_components(g)) {
    if (std::binary_search(comp.begin(), comp.end(), v)) {
      own = comp;
      continue;
    }
    Backtracker bt(g, lists, counting_order(g, comp, comp.front()));
    others *= bt.count(0);
  }
  Backtracker bt(g, lists, counting_order(g, own, v));
  std::vector<BigInt> out;
  for (Color c : lists.list(v)) out.push_back(others * bt.count_pinned(c));
  return out;
}

ColoringSpace enumerate_colorings(const Graph& g, const ListAssignment& lists, std::size_t cap) {
  check_lists(g, lists);
  std::vector<Vertex> order(g.size());
  for (Vertex v = 0; v < g.size(); ++v) order[v] = v;
  Backtracker bt(g, lists, order);
  std::vector<Color> flat;
  std::size_t found = 0;
  struct Overflow {};
  try {
    bt.enumerate(0, [&](const std::vector<Color>& colours) {
      if (++found > cap) throw Overflow{};
      flat.insert(flat.end(), colours.begin(), colours.end());
    });
  } catch (const Overflow&) {
    fail(ErrorCode::CapExceeded, "more than " + std::to_string(cap) +
                                     " colourings (enumeration cap); |Omega| >= " + std::to_string(found));
  }
  if (g.size() == 0) return ColoringSpace(0, {});
  return ColoringSpace(g.size(), std::move(flat));
}

ListAssignment lists_on(const InducedSubgraph& sub, const ListAssignment& lists) {
  std::vector<std::vector<Color>> out;
  out.reserve(sub.original.size());
  for (Vertex v : sub.original) {
    auto l = lists.list(v);
    out.emplace_back(l.begin(), l.end());
  }
  return ListAssignment(std::move(out));
}

RestrictedLists restrict_lists(const Graph& g, const ListAssignment& lists, const PartialColoring& sigma) {
  check_lists(g, lists);
  std::vector<Color> colour(g.size(), kUncoloured);
  std::vector<Vertex> removed;
  for (const auto& [v, c] : sigma) {
    if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
    if (colour[v] != kUncoloured) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " coloured twice");
    if (!lists.contains(v, c)) {
      fail(ErrorCode::Improper, "colour " + std::to_string(c) + " is not in the list of vertex " + std::to_string(v));
    }
    colour[v] = c;
    removed.push_back(v);
  }
  for (Vertex v : removed) {
    for (Vertex w : g.neighbors(v)) {
      if (v < w && colour[w] == colour[v]) {
        fail(ErrorCode::Improper, "partial colouring is improper on edge (" + std::to_string(v) + "," +
                                      std::to_string(w) + ")");
      }
    }
  }
  RestrictedLists out{remove_vertices(g, removed), {}};
  std::vector<std::vector<Color>> restricted;
  for (Vertex v : out.subgraph.original) {
    std::vector<Color> l;
    for (Color c : lists.list(v)) {
      bool blocked = false;
      for (Vertex w : g.neighbors(v)) {
        if (colour[w] == c) {
          blocked = true;
          break;
        }
      }
      if (!blocked) l.push_back(c);
    }
    restricted.push_back(std::move(l));
  }
  out.lists = ListAssignment(std::move(restricted));
  return out;
}

}  // namespace glab
