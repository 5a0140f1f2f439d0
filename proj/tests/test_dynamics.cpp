#include <doctest.h>

#include <sstream>

#include "glauberlab/bounds.hpp"
#include "glauberlab/coloring.hpp"
#include "glauberlab/dynamics.hpp"
#include "glauberlab/error.hpp"
#include "glauberlab/experiments.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace glab;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

Rational r(long a, long b) { return Rational(a, b); }

std::size_t off_diagonal_count(const EnumeratedChain& c, std::size_t i) {
  std::size_t m = 0;
  for (const auto& e : c.row(i)) m += e.col != i && e.value > 0;
  return m;
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) == mix_seed(1, 0));
  RngStream d(1, 1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(d.below(7) < 7);
    const double u = d.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("glauber moves") {
  const Coloring zero{0};
  CHECK(glauber_apply(empty_graph(1), zero, 0, 1) == Coloring{1});
  const auto k2 = complete_graph(2);
  const Coloring s{0, 1};
  bool acc = true;
  CHECK(glauber_apply(k2, s, 0, 1, &acc) == s);
  CHECK_FALSE(acc);
  CHECK(glauber_apply(k2, s, 0, 2, &acc) == Coloring{2, 1});
  CHECK(acc);
  RngStream rng(1, 0);
  const Coloring bad{1, 1};
  CHECK(code_of([&] { glauber_step(k2, uniform_lists(k2, 3), bad, rng); }) == ErrorCode::Improper);
}

TEST_CASE("glauber matrix examples") {
  const auto k1 = empty_graph(1);
  const auto m1 = glauber_matrix(k1, uniform_lists(k1, 2));
  REQUIRE(m1.size() == 2);
  CHECK(m1.mode() == NumericMode::Exact);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(m1.exact_probability(i, j) == r(1, 2));

  const auto k2 = complete_graph(2);
  const auto m2 = glauber_matrix(k2, uniform_lists(k2, 3));
  REQUIRE(m2.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(off_diagonal_count(m2, i) == 2);
    CHECK(m2.exact_probability(i, i) == r(4, 6));
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) CHECK((m2.exact_probability(i, j) == 0 || m2.exact_probability(i, j) == r(1, 6)));
  }

  const auto t = complete_graph(3);
  const auto m3 = glauber_matrix(t, uniform_lists(t, 3));
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(off_diagonal_count(m3, i) == 0);
    CHECK(m3.exact_probability(i, i) == 1);
  }
  CHECK(m3.support_components() == 6);
}

TEST_CASE("glauber matrix matches the step rule with non-uniform lists") {
  RngStream rng(9, 9);
  for (const auto& g : nonisomorphic_graphs(4)) {
    const auto lists = random_deg_plus_two_lists(g, rng);
    const auto m = glauber_matrix(g, lists);
    const auto& sp = m.space();
    for (std::size_t i = 0; i < sp.size(); ++i) {
      for (std::size_t j = 0; j < sp.size(); ++j) {
        if (i == j) continue;
        const auto a = sp.at(i), b = sp.at(j);
        std::size_t diff = 0;
        Vertex at = 0;
        for (Vertex v = 0; v < g.size(); ++v)
          if (a[v] != b[v]) ++diff, at = v;
        const Rational expect = diff == 1 ? Rational(1, static_cast<long>(g.size() * lists.list(at).size())) : 0;
        REQUIRE(m.exact_probability(i, j) == expect);
      }
    }
    CHECK(m.is_symmetric());
    CHECK(m.is_doubly_stochastic());
  }
}

TEST_CASE("kempe chains") {
  const auto p3 = path_graph(3);
  const Coloring a{1, 2, 1}, b{1, 2, 3};
  CHECK(kempe_chain(p3, a, 0, 2) == std::vector<Vertex>{0, 1, 2});
  CHECK(kempe_chain(p3, b, 0, 2) == std::vector<Vertex>{0, 1});
  CHECK(kempe_chain(p3, a, 1, 2) == std::vector<Vertex>{1});
  const Coloring z{0};
  CHECK(kempe_chain(empty_graph(1), z, 0, 3) == std::vector<Vertex>{0});
  const auto chain = kempe_chain(p3, a, 0, 2);
  CHECK(swap_colors(a, chain, 1, 2) == Coloring{2, 1, 2});
}

TEST_CASE("kempe exchange is an involution") {
  RngStream rng(3, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = generate_random_chordal(8, 4, rng);
    const std::size_t k = g.max_degree() + 2;
    auto sigma = Coloring(g.size());
    // random proper colouring by running the sampler from a greedy start
    for (Vertex v = 0; v < g.size(); ++v) {
      std::vector<bool> used(k);
      for (Vertex u : g.neighbors(v))
        if (u < v) used[sigma[u]] = true;
      Color c = 0;
      while (used[c]) ++c;
      sigma[v] = c;
    }
    for (int s = 0; s < 20; ++s) sigma = kempe_step(g, k, sigma, rng);
    const auto v = static_cast<Vertex>(rng.below(g.size()));
    const auto c = static_cast<Color>(rng.below(k));
    const auto chain = kempe_chain(g, sigma, v, c);
    const auto once = swap_colors(sigma, chain, sigma[v], c);
    CHECK(is_proper(g, once));
    CHECK(kempe_chain(g, once, v, sigma[v]) == chain);
    CHECK(swap_colors(once, chain, sigma[v], c) == sigma);
    const auto ref = oracle::kempe_component(g, sigma, v, c);
    CHECK(chain == std::vector<Vertex>(ref.begin(), ref.end()));
  }
}

TEST_CASE("kem set") {
  const Coloring z{0};
  const auto s1 = kem_set(empty_graph(1), 2, z);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0].empty());
  CHECK(s1[0].idle_weight == r(1, 2));
  CHECK(s1[1].chain == std::vector<Vertex>{0});
  CHECK(s1[1].exchange_weight == r(1, 2));

  const Coloring e{0, 1};
  const auto s2 = kem_set(complete_graph(2), 2, e);
  REQUIRE(s2.size() == 4);
  for (const auto& slot : s2) {
    if (slot.color == e[slot.vertex]) {
      CHECK(slot.empty());
    } else {
      CHECK(slot.chain == std::vector<Vertex>{0, 1});
      CHECK(slot.exchange_weight == r(1, 8));
    }
  }

  const Coloring t{0, 1, 2};
  const auto s3 = kem_set(complete_graph(3), 3, t);
  REQUIRE(s3.size() == 9);
  Rational total = 0;
  for (const auto& slot : s3) {
    total += slot.exchange_weight + slot.idle_weight;
    if (slot.color != t[slot.vertex]) CHECK(slot.chain.size() == 2);
  }
  CHECK(total == 1);
}

TEST_CASE("kempe matrix examples") {
  const auto k1 = empty_graph(1);
  const auto m1 = kempe_matrix(k1, 2);
  CHECK(m1.exact_probability(0, 1) == r(1, 2));
  CHECK(m1.exact_probability(1, 0) == r(1, 2));

  const auto t = complete_graph(3);
  const auto mt = kempe_matrix(t, 3);
  REQUIRE(mt.size() == 6);
  CHECK(mt.support_components() == 1);
  const auto& sp = mt.space();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::size_t diff = 0;
      for (Vertex v = 0; v < 3; ++v) diff += sp.at(i)[v] != sp.at(j)[v];
      if (diff == 2) CHECK(mt.exact_probability(i, j) > 0);
    }

  // P3 with two colours: the whole path is one chain; 6 slots, 4 of them
  // non-identity, each flipping with probability 1/3.
  const auto p3 = path_graph(3);
  const auto mp = kempe_matrix(p3, 2);
  REQUIRE(mp.size() == 2);
  CHECK(mp.exact_probability(0, 1) == r(3, 6) * r(1, 3));
}

TEST_CASE("kempe matrix agrees with the step definition") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& g : nonisomorphic_graphs(n)) {
      const std::size_t k = g.max_degree() + 2;
      const auto m = kempe_matrix(g, k);
      const auto states = oracle::brute_colorings(g, uniform_lists(g, k).lists());
      REQUIRE(states.size() == m.size());
      const auto ref = oracle::kempe_transitions(g, k, states);
      for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j) {
          const auto it = ref.find({states[i], states[j]});
          const Rational expect = it == ref.end() ? Rational(0) : it->second;
          REQUIRE(m.exact_probability(i, j) == expect);
        }
    }
  }
}

TEST_CASE("matrices are symmetric and doubly stochastic; glauber is ergodic at max degree + 2") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& g : nonisomorphic_graphs(n)) {
      if (!is_connected(g)) continue;
      const std::size_t k = g.max_degree() + 2;
      const auto gl = glauber_matrix(g, uniform_lists(g, k));
      CHECK(gl.is_doubly_stochastic());
      CHECK(gl.is_symmetric());
      CHECK(gl.support_components() == 1);
      if (gl.mode() == NumericMode::Exact) CHECK(gl.stochastic_defect() == 0.0);
      if (n <= 5) {
        const auto ke = kempe_matrix(g, k);
        CHECK(ke.is_doubly_stochastic());
        CHECK(ke.is_symmetric());
      }
    }
  }
}

TEST_CASE("float mode beyond the exact state limit") {
  const auto g = empty_graph(7);
  const auto m = glauber_matrix(g, uniform_lists(g, 3));
  CHECK(m.size() == 2187);
  CHECK(m.mode() == NumericMode::Float);
  CHECK(m.stochastic_defect() < 1e-12);
  CHECK(m.is_symmetric());
  CHECK(code_of([&] { m.exact_probability(0, 0); }) == ErrorCode::Precondition);
}

TEST_CASE("samplers never leave the proper colourings") {
  RngStream gen(77, 0);
  const auto g = generate_random_chordal(10, 4, gen);
  const std::size_t k = g.max_degree() + 2;
  const auto lists = uniform_lists(g, k);
  Coloring x(g.size()), y(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<bool> used(k);
    for (Vertex u : g.neighbors(v))
      if (u < v) used[x[u]] = true;
    Color c = 0;
    while (used[c]) ++c;
    x[v] = y[v] = c;
  }
  RngStream a(1, 1), b(1, 2);
  std::size_t bad = 0;
  for (int s = 0; s < 1000000; ++s) {
    x = glauber_step(g, lists, x, a);
    y = kempe_step(g, k, y, b);
    if ((s & 1023) == 0) bad += !is_proper(g, x) + !is_proper(g, y);
  }
  CHECK(bad == 0);
  CHECK(is_proper(g, x));
  CHECK(is_proper(g, y));
}

TEST_CASE("sampler frequencies match matrix rows") {
  struct Case {
    Graph g;
    std::size_t k;
    Dynamics d;
  };
  const std::vector<Case> cases{{complete_graph(3), 3, Dynamics::Kempe},
                                {complete_graph(3), 4, Dynamics::Glauber},
                                {path_graph(4), 3, Dynamics::Glauber},
                                {path_graph(4), 3, Dynamics::Kempe}};
  for (const auto& c : cases) {
    const auto lists = uniform_lists(c.g, c.k);
    const auto m = c.d == Dynamics::Glauber ? glauber_matrix(c.g, lists) : kempe_matrix(c.g, c.k);
    const auto& sp = m.space();
    stats::ChiSquare chi;
    RngStream rng(2718, sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) {
      std::vector<std::size_t> counts(sp.size(), 0);
      for (int s = 0; s < 100000; ++s) {
        const auto next = c.d == Dynamics::Glauber ? glauber_step(c.g, lists, sp.at(i), rng)
                                                   : kempe_step(c.g, c.k, sp.at(i), rng);
        ++counts[*sp.index_of(next)];
      }
      std::vector<double> probs(sp.size());
      for (std::size_t j = 0; j < sp.size(); ++j) probs[j] = m.probability(i, j);
      REQUIRE(chi.add(probs, counts));
    }
    INFO(to_string(c.d) << " k=" << c.k << " stat=" << chi.statistic << " df=" << chi.df);
    CHECK(chi.p_value() > 0.001);
  }
}

TEST_CASE("trace lines") {
  const auto g = complete_graph(2);
  const auto lists = uniform_lists(g, 3);
  const auto space = enumerate_colorings(g, lists);
  std::ostringstream a, b;
  RngStream r1(5, 0), r2(5, 0);
  const auto s1 = run_sampler(g, lists, Dynamics::Glauber, {0, 1}, 50, r1, &space, &a);
  const auto s2 = run_sampler(g, lists, Dynamics::Glauber, {0, 1}, 50, r2, &space, &b);
  CHECK(a.str() == b.str());
  CHECK(s1.final_state == s2.final_state);
  std::istringstream in(a.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), '\t') == 4);
  }
  CHECK(lines == 50);
}
