#include "glauberlab/bounds.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

#include "glauberlab/decomposition.hpp"
#include "glauberlab/error.hpp"

namespace glab {

namespace {

Rational pow_rational(const Rational& x, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

Rational ratio(const BigInt& a, const BigInt& b) { return Rational(a, b); }

std::size_t effective_alpha(const Graph& g, std::optional<std::size_t> chi) {
  return bounds_constants(chi ? *chi : clique_and_chromatic_number(g).chi).alpha;
}

void require_vertex(const Graph& g, Vertex v) {
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
}

void require_deg_plus(const Graph& g, const ListAssignment& lists, std::size_t extra, const char* what) {
  if (lists.size() != g.size()) fail(ErrorCode::InvalidArgument, "list assignment does not match the graph");
  for (Vertex w = 0; w < g.size(); ++w) {
    if (lists.list(w).size() < g.degree(w) + extra) {
      fail(ErrorCode::Precondition, std::string(what) + ": |L(" + std::to_string(w) + ")| = " +
                                        std::to_string(lists.list(w).size()) + " < deg + " + std::to_string(extra));
    }
  }
}

std::size_t color_position(const ListAssignment& lists, Vertex v, Color c) {
  const auto l = lists.list(v);
  auto it = std::lower_bound(l.begin(), l.end(), c);
  if (it == l.end() || *it != c) {
    fail(ErrorCode::Precondition, "colour " + std::to_string(c) + " is not in L(" + std::to_string(v) + ")");
  }
  return static_cast<std::size_t>(it - l.begin());
}

BigInt count_without(const Graph& g, const ListAssignment& lists, Vertex v) {
  const std::array<Vertex, 1> rm{v};
  const auto sub = remove_vertices(g, rm);
  return count_colorings(sub.graph, lists_on(sub, lists));
}

// The inequalities given the three counts involved.
CountVerdict lemma_gv(const ListAssignment& lists, Vertex v, std::size_t alpha, const BigInt& total,
                      const BigInt& without) {
  const Rational factor = std::max(Rational(static_cast<unsigned>(lists.list(v).size()), alpha), Rational(2));
  CountVerdict out;
  out.lhs = Rational(total);
  out.rhs = factor * Rational(without);
  out.pass = out.lhs >= out.rhs;
  return out;
}

CountVerdict cor_distrib(const ListAssignment& lists, Vertex v, std::size_t alpha, const BigInt& with_c,
                         const BigInt& total) {
  CountVerdict out;
  out.lhs = ratio(with_c, total);
  out.rhs = std::min(Rational(1, 2), Rational(alpha, static_cast<unsigned>(lists.list(v).size())));
  out.pass = out.lhs <= out.rhs;
  return out;
}

CountVerdict count_lb(const Graph& g, const ListAssignment& lists, Vertex v, Color c, std::size_t alpha,
                      const BigInt& with_c, const BigInt& without) {
  CountVerdict out;
  out.lhs = ratio(with_c, without);
  Rational prod = 1, strict = 1;
  bool strict_defined = true;
  for (Vertex w : g.neighbors(v)) {
    if (!lists.contains(w, c)) continue;
    const auto size = static_cast<unsigned>(lists.list(w).size());
    prod *= 1 - std::min(Rational(alpha, size), Rational(1, 2));
    if (size <= 1) {
      strict_defined = false;
    } else {
      strict *= 1 - std::min(Rational(alpha, size - 1), Rational(1, 2));
    }
  }
  out.rhs = prod;
  out.pass = out.lhs >= out.rhs;
  if (strict_defined) {
    out.strict_rhs = strict;
    out.strict_pass = out.lhs >= strict;
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string serialise(const Graph& g) {
  std::string s = std::to_string(g.size()) + " " + std::to_string(g.edge_count());
  for (const auto& [u, w] : g.edges()) s += " " + std::to_string(u) + " " + std::to_string(w);
  return s;
}

}  // namespace

BoundsConstants bounds_constants(std::size_t chi) {
  if (chi == 0) fail(ErrorCode::InvalidArgument, "chromatic number must be positive");
  BoundsConstants k;
  k.chi = chi;
  k.alpha_chi = alpha_chi(chi);
  k.alpha = 24 * std::max<std::size_t>(chi - 1, 1);
  k.c_chi = inverse_power_of_two(static_cast<unsigned>(8 * k.alpha_chi * k.alpha_chi));
  k.k_good = inverse_power_of_two(static_cast<unsigned>(6 * k.alpha)) / static_cast<unsigned>(k.alpha);
  k.a_const = 6 * k.alpha_chi * k.alpha_chi;
  return k;
}

BoundsConstants bounds_constants(const Graph& g) {
  return bounds_constants(std::max<std::size_t>(clique_and_chromatic_number(g).chi, 1));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

TechBoundVerdict check_tech_bound(std::size_t a, std::size_t k, const Rational& eps, const std::vector<Rational>& xs) {
  if (a == 0 || k == 0) fail(ErrorCode::InvalidArgument, "A and k must be positive integers");
  if (xs.size() != k) {
    fail(ErrorCode::InvalidArgument, "expected k = " + std::to_string(k) + " values, got " + std::to_string(xs.size()));
  }
  if (eps <= 0 || eps >= 1) fail(ErrorCode::InvalidArgument, "epsilon must lie strictly between 0 and 1");
  TechBoundVerdict out;
  out.product = 1;
  out.sum = 0;
  for (const auto& x : xs) {
    out.product *= 1 - x;
    out.sum += x;
  }
  out.eps_pow_a = pow_rational(eps, a);
  out.target = (1 - eps) * static_cast<unsigned>(a);
  const bool in_range = std::all_of(xs.begin(), xs.end(), [&](const Rational& x) { return x >= 0 && x <= 1 - eps; });
  if (k < a || !in_range || out.product > out.eps_pow_a) {
    out.verdict = Verdict::Vacuous;
  } else {
    out.verdict = out.sum >= out.target ? Verdict::Pass : Verdict::Fail;
  }
  return out;
}

CountVerdict verify_lemma_bound_Gv(const Graph& g, const ListAssignment& lists, Vertex v,
                                   std::optional<std::size_t> chi) {
  require_vertex(g, v);
  require_deg_plus(g, lists, 1, "list assignment is not deg+1");
  if (lists.list(v).size() < g.degree(v) + 2) {
    fail(ErrorCode::Precondition, "|L(" + std::to_string(v) + ")| < deg + 2");
  }
  return lemma_gv(lists, v, effective_alpha(g, chi), count_colorings(g, lists), count_without(g, lists, v));
}

CountVerdict verify_cor_distrib(const Graph& g, const ListAssignment& lists, Vertex v, Color c,
                                std::optional<std::size_t> chi) {
  require_vertex(g, v);
  require_deg_plus(g, lists, 2, "list assignment is not deg+2");
  const std::size_t pos = color_position(lists, v, c);
  const auto by_color = count_by_color(g, lists, v);
  return cor_distrib(lists, v, effective_alpha(g, chi), by_color[pos], count_colorings(g, lists));
}

CountVerdict verify_countLB(const Graph& g, const ListAssignment& lists, Vertex v, Color c,
                            std::optional<std::size_t> chi) {
  require_vertex(g, v);
  require_deg_plus(g, lists, 2, "list assignment is not deg+2");
  if (g.size() < 2) fail(ErrorCode::Precondition, "G - v is empty");
  const std::size_t pos = color_position(lists, v, c);
  const auto by_color = count_by_color(g, lists, v);
  return count_lb(g, lists, v, c, effective_alpha(g, chi), by_color[pos], count_without(g, lists, v));
}

std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
  if (n > 6) fail(ErrorCode::CapExceeded, "exhaustive corpus is limited to n <= 6");
  std::vector<Edge> pairs;
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n, 0));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w = u + 1; w < n; ++w) {
      index[u][w] = index[w][u] = pairs.size();
      pairs.emplace_back(u, w);
    }
  }
  const std::size_t m = pairs.size();
  std::vector<std::vector<std::size_t>> maps;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  do {
    std::vector<std::size_t> map(m);
    for (std::size_t e = 0; e < m; ++e) map[e] = index[perm[pairs[e].first]][perm[pairs[e].second]];
    maps.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    // Keep the mask only if it is the smallest in its orbit.
    bool minimal = true;
    for (const auto& map : maps) {
      std::uint32_t image = 0;
      for (std::size_t e = 0; e < m; ++e) {
        if (mask >> e & 1u) image |= std::uint32_t{1} << map[e];
      }
      if (image < mask) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1u) edges.push_back(pairs[e]);
    }
    out.push_back(Graph::from_edges(n, edges));
  }
  return out;
}

GraphCorpus graph_corpus(std::size_t max_n) {
  GraphCorpus c;
  std::string blob;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (auto& g : nonisomorphic_graphs(n)) {
      blob += serialise(g) + ";";
      c.graphs.push_back(std::move(g));
    }
  }
  c.digest = hex64(fnv1a(blob));
  return c;
}

std::string graph_digest(const Graph& g) { return hex64(fnv1a(serialise(g))); }

std::string lists_digest(const ListAssignment& lists) {
  std::string s;
  for (const auto& l : lists.lists()) {
    for (Color c : l) s += std::to_string(c) + ",";
    s += ";";
  }
  return hex64(fnv1a(s));
}

ListAssignment random_deg_plus_two_lists(const Graph& g, RngStream& rng) {
  const std::size_t palette = g.max_degree() + 4;
  std::vector<std::vector<Color>> lists(g.size());
  std::vector<Color> pool(palette);
  for (Vertex v = 0; v < g.size(); ++v) {
    const std::size_t size = g.degree(v) + 2 + rng.below(2);
    std::iota(pool.begin(), pool.end(), Color{0});
    for (std::size_t i = 0; i < size; ++i) {
      std::swap(pool[i], pool[i + rng.below(palette - i)]);
    }
    lists[v].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return ListAssignment(std::move(lists));
}

SweepSummary counting_sweep(const GraphCorpus& corpus, std::size_t assignments_per_graph, std::uint64_t seed,
                            bool keep_all) {
  SweepSummary s;
  for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
    const Graph& g = corpus.graphs[gi];
    const std::size_t alpha = bounds_constants(std::max<std::size_t>(clique_and_chromatic_number(g).chi, 1)).alpha;
    const std::string gd = graph_digest(g);
    RngStream rng(seed, gi);
    for (std::size_t a = 0; a < assignments_per_graph; ++a) {
      const ListAssignment lists = random_deg_plus_two_lists(g, rng);
      const std::string ld = lists_digest(lists);
      const BigInt total = count_colorings(g, lists);
      ++s.instances;
      auto record = [&](const char* check, Vertex v, std::optional<Color> c, const Rational& lhs, const Rational& rhs,
                        bool pass) {
        ++s.checks;
        if (!pass) ++s.violations;
        if (keep_all || !pass) s.rows.push_back({gd, ld, check, v, c, lhs, rhs, pass});
      };
      for (Vertex v = 0; v < g.size(); ++v) {
        const BigInt without = count_without(g, lists, v);
        const auto gv = lemma_gv(lists, v, alpha, total, without);
        record("lemma_bound_Gv", v, std::nullopt, gv.lhs, gv.rhs, gv.pass);
        const auto by_color = count_by_color(g, lists, v);
        const auto l = lists.list(v);
        for (std::size_t i = 0; i < l.size(); ++i) {
          const auto cd = cor_distrib(lists, v, alpha, by_color[i], total);
          record("cor_distrib", v, l[i], cd.lhs, cd.rhs, cd.pass);
          if (g.size() < 2) continue;
          const auto lb = count_lb(g, lists, v, l[i], alpha, by_color[i], without);
          record("countLB", v, l[i], lb.lhs, lb.rhs, lb.pass);
          if (lb.strict_pass) record("countLB_strict", v, l[i], lb.lhs, *lb.strict_rhs, *lb.strict_pass);
        }
      }
    }
  }
  return s;
}

TechSweepSummary tech_bound_sweep(std::size_t tuples, std::uint64_t seed) {
  // Values live on a 1/64 grid: eps = p/64 and x_i = (q_i/64)(1 - eps). The
  // hypothesis is screened in integers before the exact rational check.
  constexpr unsigned kGrid = 64;
  TechSweepSummary s;
  RngStream rng(seed, 0x7465636bULL);
  const std::size_t max_draws = tuples * 2000 + 1000;
  std::size_t draws = 0;
  while (s.tuples < tuples) {
    if (++draws > max_draws) fail(ErrorCode::Internal, "technical-bound sweep could not find enough tuples");
    const std::size_t a = 1 + rng.below(4);
    const std::size_t k = a + rng.below(8 - a + 1);
    const unsigned p = 1 + static_cast<unsigned>(rng.below(kGrid - 1));
    std::vector<unsigned> q(k);
    for (auto& qi : q) qi = static_cast<unsigned>(rng.below(kGrid + 1));
    // prod (4096 - q_i (64 - p)) * 64^A  <=  p^A * 4096^k
    unsigned __int128 lhs = 1, rhs = 1;
    for (unsigned qi : q) {
      lhs *= kGrid * kGrid - qi * (kGrid - p);
      rhs *= kGrid * kGrid;
    }
    for (std::size_t i = 0; i < a; ++i) {
      lhs *= kGrid;
      rhs *= p;
    }
    if (lhs > rhs) {
      ++s.vacuous_draws;
      continue;
    }
    const Rational eps(p, kGrid);
    std::vector<Rational> xs;
    xs.reserve(k);
    for (unsigned qi : q) xs.push_back(Rational(qi, kGrid) * (1 - eps));
    const auto verdict = check_tech_bound(a, k, eps, xs);
    if (verdict.verdict == Verdict::Vacuous) fail(ErrorCode::Internal, "integer screen disagrees with exact check");
    ++s.tuples;
    if (verdict.verdict == Verdict::Fail) ++s.violations;
  }
  return s;
}

}  // namespace glab
