#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "glauberlab/glauberlab.h"

TEST_CASE("version and status names") {
  CHECK(std::string(glab_version()) == GLAB_VERSION_STRING);
  CHECK(std::string(glab_status_name(GLAB_NOT_CHORDAL)) == "graph is not chordal");
  CHECK(std::string(glab_status_name(static_cast<glab_status>(99))) == "unknown");
  CHECK(std::string(glab_status_name(GLAB_OK)) == "ok");
}

TEST_CASE("graph handles") {
  const uint32_t e[] = {0, 1, 1, 2, 2, 0};
  glab_graph* g = nullptr;
  REQUIRE(glab_graph_create(3, e, 3, &g) == GLAB_OK);
  size_t n = 0, m = 0, d = 0;
  CHECK(glab_graph_info(g, &n, &m, &d) == GLAB_OK);
  CHECK(n == 3);
  CHECK(m == 3);
  CHECK(d == 2);
  int chordal = 0;
  CHECK(glab_graph_is_chordal(g, &chordal) == GLAB_OK);
  CHECK(chordal == 1);
  size_t omega = 0, chi = 0;
  CHECK(glab_clique_chromatic(g, &omega, &chi) == GLAB_OK);
  CHECK(omega == 3);
  CHECK(chi == 3);
  glab_graph_destroy(g);

  const uint32_t loop[] = {1, 1};
  glab_graph* bad = nullptr;
  CHECK(glab_graph_create(2, loop, 1, &bad) == GLAB_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::strlen(glab_last_error()) > 0);

  CHECK(glab_graph_parse("3 5 0 1", &bad) == GLAB_PARSE);
  CHECK(glab_graph_load("/nonexistent/g.txt", &bad) == GLAB_IO);
  CHECK(glab_graph_info(nullptr, &n, &m, &d) == GLAB_INVALID_ARGUMENT);
  glab_graph_destroy(nullptr);
}

TEST_CASE("counting and chains") {
  glab_graph* g = nullptr;
  REQUIRE(glab_graph_parse(R"({"n": 3, "edges": [[0, 1], [1, 2]]})", &g) == GLAB_OK);
  glab_lists* l = nullptr;
  REQUIRE(glab_lists_uniform(g, 3, &l) == GLAB_OK);
  char buf[32];
  CHECK(glab_count_colorings(g, l, buf, sizeof buf) == GLAB_OK);
  CHECK(std::string(buf) == "12");
  char tiny[2];
  CHECK(glab_count_colorings(g, l, tiny, sizeof tiny) == GLAB_INVALID_ARGUMENT);

  glab_chain* c = nullptr;
  REQUIRE(glab_chain_build(g, l, GLAB_GLAUBER, 2000, &c) == GLAB_OK);
  size_t states = 0;
  CHECK(glab_chain_size(c, &states) == GLAB_OK);
  CHECK(states == 12);
  for (size_t i = 0; i < states; ++i) {
    double row = 0;
    for (size_t j = 0; j < states; ++j) {
      double p = 0;
      REQUIRE(glab_chain_probability(c, i, j, &p) == GLAB_OK);
      row += p;
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
  }
  std::vector<uint32_t> colors(3);
  CHECK(glab_chain_state(c, 0, colors.data(), colors.size()) == GLAB_OK);
  CHECK(colors[0] != colors[1]);
  CHECK(glab_chain_state(c, states, colors.data(), colors.size()) == GLAB_INVALID_ARGUMENT);
  CHECK(glab_chain_state(c, 0, colors.data(), 2) == GLAB_INVALID_ARGUMENT);

  glab_gap_info info{};
  CHECK(glab_spectral_gap(c, &info) == GLAB_OK);
  CHECK(info.ergodic == 1);
  CHECK(info.exact_mode == 1);
  CHECK(info.gap > 0);
  CHECK(info.relaxation == doctest::Approx(1 / info.gap));
  size_t tau = 0;
  CHECK(glab_mixing_time(c, 0.25, &tau) == GLAB_OK);
  CHECK(tau >= 1);
  glab_chain_destroy(c);

  glab_chain* capped = nullptr;
  CHECK(glab_chain_build(g, l, GLAB_GLAUBER, 5, &capped) == GLAB_CAP_EXCEEDED);

  glab_lists* mixed = nullptr;
  REQUIRE(glab_lists_parse(g, R"({"lists": [[0, 1, 2], [0, 1, 2], [0, 1, 3]]})", &mixed) == GLAB_OK);
  CHECK(glab_chain_build(g, mixed, GLAB_KEMPE, 2000, &capped) == GLAB_USAGE);
  CHECK(std::string(glab_last_error()).find("uniform") != std::string::npos);
  CHECK(glab_lists_parse(g, R"({"lists": [[0]]})", &mixed) == GLAB_INVALID_ARGUMENT);
  glab_lists_destroy(mixed);
  glab_lists_destroy(l);
  glab_graph_destroy(g);
}

TEST_CASE("non-ergodic triangle") {
  glab_graph* g = nullptr;
  REQUIRE(glab_graph_parse("3 3 0 1 1 2 2 0", &g) == GLAB_OK);
  glab_lists* l = nullptr;
  REQUIRE(glab_lists_parse(g, "k=3", &l) == GLAB_OK);
  glab_chain* c = nullptr;
  REQUIRE(glab_chain_build(g, l, GLAB_GLAUBER, 2000, &c) == GLAB_OK);
  glab_gap_info info{};
  CHECK(glab_spectral_gap(c, &info) == GLAB_OK);
  CHECK(info.ergodic == 0);
  size_t tau = 0;
  CHECK(glab_mixing_time(c, 0.25, &tau) == GLAB_NOT_ERGODIC);
  glab_chain_destroy(c);
  glab_lists_destroy(l);
  glab_graph_destroy(g);
}

TEST_CASE("experiment runner") {
  int exit_code = -1;
  CHECK(glab_run_experiment(R"({"command": "couple", "generator": "chordal:n=3,maxclique=2", "colors": 4, "replicas": 0})",
                            nullptr, &exit_code) == GLAB_USAGE);
  CHECK(glab_run_experiment("not json", nullptr, &exit_code) == GLAB_USAGE);
  CHECK(glab_run_experiment(nullptr, nullptr, &exit_code) == GLAB_INVALID_ARGUMENT);
}
