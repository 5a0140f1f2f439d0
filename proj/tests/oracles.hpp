#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library beyond the Graph accessors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "glauberlab/graph.hpp"

namespace oracle {

using glab::Graph;
using glab::Vertex;
using Big = boost::multiprecision::cpp_int;
using Frac = boost::multiprecision::cpp_rational;

inline bool earlier_neighbours_clique(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<std::size_t> pos(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<Vertex> before;
    for (Vertex u : g.neighbors(order[i]))
      if (pos[u] < i) before.push_back(u);
    for (std::size_t a = 0; a < before.size(); ++a)
      for (std::size_t b = a + 1; b < before.size(); ++b)
        if (!g.adjacent(before[a], before[b])) return false;
  }
  return true;
}

/// Chordality by exhausting permutations.
inline bool has_perfect_ordering(const Graph& g) {
  std::vector<Vertex> p(g.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (earlier_neighbours_clique(g, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Every colour vector in the product of lists, filtered for properness.
inline std::vector<std::vector<std::uint32_t>> brute_colorings(const Graph& g,
                                                               const std::vector<std::vector<std::uint32_t>>& lists) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::size_t n = g.size();
  std::vector<std::size_t> idx(n, 0);
  if (n == 0) return {{}};
  for (const auto& l : lists)
    if (l.empty()) return out;
  while (true) {
    std::vector<std::uint32_t> c(n);
    for (std::size_t v = 0; v < n; ++v) c[v] = lists[v][idx[v]];
    bool ok = true;
    for (const auto& [u, v] : g.edges()) ok = ok && c[u] != c[v];
    if (ok) out.push_back(c);
    std::size_t v = n;
    while (v > 0) {
      --v;
      if (++idx[v] < lists[v].size()) break;
      idx[v] = 0;
      if (v == 0) return out;
    }
  }
}

/// Chromatic polynomial at k by deletion-contraction on an edge set.
inline Big chromatic_polynomial(std::size_t n, std::set<std::pair<int, int>> edges, long k) {
  if (edges.empty()) {
    Big r = 1;
    for (std::size_t i = 0; i < n; ++i) r *= k;
    return r;
  }
  const auto e = *edges.begin();
  auto deleted = edges;
  deleted.erase(e);
  // contract e.second into e.first and relabel vertices above e.second down
  std::set<std::pair<int, int>> contracted;
  auto relabel = [&](int x) {
    if (x == e.second) x = e.first;
    return x > e.second ? x - 1 : x;
  };
  for (const auto& [a, b] : deleted) {
    int u = relabel(a), v = relabel(b);
    if (u == v) continue;
    contracted.insert({std::min(u, v), std::max(u, v)});
  }
  return chromatic_polynomial(n, deleted, k) - chromatic_polynomial(n - 1, contracted, k);
}

inline Big chromatic_polynomial(const Graph& g, long k) {
  std::set<std::pair<int, int>> e;
  for (const auto& [u, v] : g.edges()) e.insert({static_cast<int>(u), static_cast<int>(v)});
  return chromatic_polynomial(g.size(), e, k);
}

/// Ascending eigenvalues of a dense symmetric matrix (Eigen).
inline std::vector<double> eigenvalues(const std::vector<double>& dense, std::size_t n) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dense[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

/// 1 - second largest eigenvalue.
inline double dirichlet_gap(const std::vector<double>& dense, std::size_t n) {
  const auto ev = eigenvalues(dense, n);
  return 1.0 - ev[n - 2];
}

/// Least t with max over starts of TV(P^t(x,.), uniform) <= threshold, by
/// repeated dense matrix products.
inline std::size_t mixing_time(const std::vector<double>& dense, std::size_t n, double threshold = 0.25,
                               std::size_t max_t = 100000) {
  Eigen::MatrixXd p(n, n), q = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = dense[i * n + j];
  for (std::size_t t = 0; t <= max_t; ++t) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = 0.0;
      for (std::size_t j = 0; j < n; ++j) tv += std::abs(q(i, j) - 1.0 / static_cast<double>(n));
      worst = std::max(worst, tv / 2.0);
    }
    if (worst <= threshold) return t;
    q = q * p;
  }
  return max_t + 1;
}

/// Components of the graph on states with an edge wherever dense[i][j] > 0.
inline std::size_t support_components(const std::vector<double>& dense, std::size_t n) {
  std::vector<int> seen(n, 0);
  std::size_t comps = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j] && dense[i * n + j] > 0) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
  }
  return comps;
}

/// Maximal bicoloured connected set by flood fill over the edge list.
inline std::set<Vertex> kempe_component(const Graph& g, const std::vector<std::uint32_t>& s, Vertex v,
                                        std::uint32_t c) {
  std::set<Vertex> comp{v};
  if (s[v] == c) return comp;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : g.edges()) {
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (comp.count(x) && !comp.count(y) && (s[y] == s[v] || s[y] == c)) {
          comp.insert(y);
          grew = true;
        }
      }
    }
  }
  return comp;
}

/// Kempe transition matrix straight from the step definition, as exact
/// fractions keyed by colouring.
inline std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, Frac> kempe_transitions(
    const Graph& g, std::size_t k, const std::vector<std::vector<std::uint32_t>>& states) {
  std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, Frac> out;
  const Frac draw(1, static_cast<long>(g.size() * k));
  for (const auto& s : states) {
    for (Vertex v = 0; v < g.size(); ++v) {
      for (std::uint32_t c = 0; c < k; ++c) {
        if (c == s[v]) {
          out[{s, s}] += draw;
          continue;
        }
        const auto comp = kempe_component(g, s, v, c);
        auto t = s;
        for (Vertex w : comp) t[w] = (s[w] == c) ? s[v] : c;
        const Frac acc(1, static_cast<long>(comp.size()));
        out[{s, t}] += draw * acc;
        out[{s, s}] += draw * (1 - acc);
      }
    }
  }
  return out;
}

}  // namespace oracle
