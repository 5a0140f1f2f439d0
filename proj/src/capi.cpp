#include "glauberlab/glauberlab.h"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include "glauberlab/coloring.hpp"
#include "glauberlab/decomposition.hpp"
#include "glauberlab/dynamics.hpp"
#include "glauberlab/error.hpp"
#include "glauberlab/experiments.hpp"
#include "glauberlab/io.hpp"
#include "glauberlab/spectral.hpp"

struct glab_graph {
  glab::Graph g;
};
struct glab_lists {
  glab::ListAssignment l;
};
struct glab_chain {
  glab::EnumeratedChain c;
};

namespace {

thread_local std::string last_error;

template <class F>
glab_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return GLAB_OK;
  } catch (const glab::Error& e) {
    last_error = e.what();
    return static_cast<glab_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GLAB_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GLAB_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) glab::fail(glab::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* glab_version(void) { return GLAB_VERSION_STRING; }

const char* glab_last_error(void) { return last_error.c_str(); }

const char* glab_status_name(glab_status status) {
  if (status == GLAB_OK) return "ok";
  if (status < GLAB_INVALID_ARGUMENT || status > GLAB_INTERNAL) return "unknown";
  return glab::to_string(static_cast<glab::ErrorCode>(status));
}

glab_status glab_graph_create(size_t n, const uint32_t* endpoints, size_t edge_count, glab_graph** out) {
  return guarded([&] {
    require(out, "out");
    if (edge_count) require(endpoints, "endpoints");
    std::vector<glab::Edge> edges;
    for (size_t i = 0; i < edge_count; ++i) edges.emplace_back(endpoints[2 * i], endpoints[2 * i + 1]);
    *out = new glab_graph{glab::Graph::from_edges(n, edges)};
  });
}

glab_status glab_graph_parse(const char* text, glab_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new glab_graph{glab::parse_graph(text)};
  });
}

glab_status glab_graph_load(const char* path, glab_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new glab_graph{glab::load_graph(path)};
  });
}

void glab_graph_destroy(glab_graph* g) { delete g; }

glab_status glab_graph_info(const glab_graph* g, size_t* n, size_t* m, size_t* max_degree) {
  return guarded([&] {
    require(g, "graph");
    if (n) *n = g->g.size();
    if (m) *m = g->g.edge_count();
    if (max_degree) *max_degree = g->g.max_degree();
  });
}

glab_status glab_graph_is_chordal(const glab_graph* g, int* chordal) {
  return guarded([&] {
    require(g, "graph");
    require(chordal, "chordal");
    *chordal = glab::maximum_cardinality_search(g->g).chordal ? 1 : 0;
  });
}

glab_status glab_clique_chromatic(const glab_graph* g, size_t* omega, size_t* chi) {
  return guarded([&] {
    require(g, "graph");
    const auto r = glab::clique_and_chromatic_number(g->g);
    if (omega) *omega = r.omega;
    if (chi) *chi = r.chi;
  });
}

glab_status glab_lists_uniform(const glab_graph* g, size_t k, glab_lists** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new glab_lists{glab::uniform_lists(g->g, k)};
  });
}

glab_status glab_lists_parse(const glab_graph* g, const char* text, glab_lists** out) {
  return guarded([&] {
    require(g, "graph");
    require(text, "text");
    require(out, "out");
    *out = new glab_lists{glab::parse_lists(text, g->g)};
  });
}

void glab_lists_destroy(glab_lists* l) { delete l; }

glab_status glab_count_colorings(const glab_graph* g, const glab_lists* l, char* buf, size_t buf_len) {
  return guarded([&] {
    require(g, "graph");
    require(l, "lists");
    require(buf, "buf");
    const std::string s = glab::count_colorings(g->g, l->l).str();
    if (s.size() + 1 > buf_len) glab::fail(glab::ErrorCode::InvalidArgument, "buffer too small for " + s);
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

glab_status glab_chain_build(const glab_graph* g, const glab_lists* l, glab_dynamics dyn, size_t cap,
                             glab_chain** out) {
  return guarded([&] {
    require(g, "graph");
    require(l, "lists");
    require(out, "out");
    if (dyn == GLAB_GLAUBER) {
      *out = new glab_chain{glab::glauber_matrix(g->g, l->l, cap)};
    } else if (dyn == GLAB_KEMPE) {
      const auto k = l->l.uniform_size();
      if (!k) glab::fail(glab::ErrorCode::Usage, "Kempe dynamics needs uniform lists {0..k-1}");
      *out = new glab_chain{glab::kempe_matrix(g->g, *k, cap)};
    } else {
      glab::fail(glab::ErrorCode::InvalidArgument, "unknown dynamics");
    }
  });
}

void glab_chain_destroy(glab_chain* c) { delete c; }

glab_status glab_chain_size(const glab_chain* c, size_t* states) {
  return guarded([&] {
    require(c, "chain");
    require(states, "states");
    *states = c->c.size();
  });
}

glab_status glab_chain_probability(const glab_chain* c, size_t i, size_t j, double* p) {
  return guarded([&] {
    require(c, "chain");
    require(p, "p");
    if (i >= c->c.size() || j >= c->c.size()) glab::fail(glab::ErrorCode::InvalidArgument, "state index out of range");
    *p = c->c.probability(i, j);
  });
}

glab_status glab_chain_state(const glab_chain* c, size_t i, uint32_t* colors, size_t n) {
  return guarded([&] {
    require(c, "chain");
    require(colors, "colors");
    if (i >= c->c.size()) glab::fail(glab::ErrorCode::InvalidArgument, "state index out of range");
    const auto s = c->c.space().at(i);
    if (n != s.size()) glab::fail(glab::ErrorCode::InvalidArgument, "colour buffer length must equal n");
    std::copy(s.begin(), s.end(), colors);
  });
}

glab_status glab_spectral_gap(const glab_chain* c, glab_gap_info* info) {
  return guarded([&] {
    require(c, "chain");
    require(info, "info");
    const auto r = glab::spectral_gap(c->c);
    *info = glab_gap_info{r.states,        r.unit_multiplicity,
                          r.ergodic,       r.degenerate,
                          r.negative_dominates, c->c.mode() == glab::NumericMode::Exact,
                          r.lambda2,       r.lambda_min,
                          r.dirichlet_gap, r.gap,
                          r.relaxation};
  });
}

glab_status glab_mixing_time(const glab_chain* c, double threshold, size_t* tau) {
  return guarded([&] {
    require(c, "chain");
    require(tau, "tau");
    *tau = glab::mixing_time_exact(c->c, threshold).tau;
  });
}

glab_status glab_run_experiment(const char* config_json, const char* out_dir, int* exit_code) {
  return guarded([&] {
    require(config_json, "config_json");
    require(exit_code, "exit_code");
    auto cfg = glab::ExperimentConfig::from_json(config_json);
    if (out_dir && *out_dir) cfg.out_dir = out_dir;
    const auto result = glab::run_experiment(cfg);
    glab::write_experiment(cfg, result, std::cout, std::cerr);
    std::cout.flush();
    *exit_code = result.exit_code;
  });
}

}  // extern "C"
