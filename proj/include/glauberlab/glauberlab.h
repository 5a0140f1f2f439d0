#ifndef GLAUBERLAB_H
#define GLAUBERLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GLAB_EXPORT __declspec(dllexport)
#else
#define GLAB_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glab_status {
  GLAB_OK = 0,
  GLAB_INVALID_ARGUMENT = 1,
  GLAB_NOT_CHORDAL = 2,
  GLAB_CAP_EXCEEDED = 3,
  GLAB_IMPROPER = 4,
  GLAB_NOT_ERGODIC = 5,
  GLAB_PRECONDITION = 6,
  GLAB_IO = 7,
  GLAB_PARSE = 8,
  GLAB_WEIGHT_DEFICIT = 9,
  GLAB_USAGE = 10,
  GLAB_INTERNAL = 11
} glab_status;

typedef struct glab_graph glab_graph;
typedef struct glab_lists glab_lists;
typedef struct glab_chain glab_chain;

typedef enum glab_dynamics { GLAB_GLAUBER = 0, GLAB_KEMPE = 1 } glab_dynamics;

typedef struct glab_gap_info {
  size_t states;
  size_t unit_multiplicity;
  int ergodic;
  int degenerate;
  int negative_dominates;
  int exact_mode;
  double lambda2;
  double lambda_min;
  double dirichlet_gap;
  double gap;
  double relaxation;
} glab_gap_info;

GLAB_EXPORT const char* glab_version(void);
/* Message of the last failure on the calling thread ("" if none). */
GLAB_EXPORT const char* glab_last_error(void);
GLAB_EXPORT const char* glab_status_name(glab_status status);

GLAB_EXPORT glab_status glab_graph_create(size_t n, const uint32_t* endpoints, size_t edge_count, glab_graph** out);
/* JSON {"n","edges"} or "n m u1 v1 ..." text. */
GLAB_EXPORT glab_status glab_graph_parse(const char* text, glab_graph** out);
GLAB_EXPORT glab_status glab_graph_load(const char* path, glab_graph** out);
GLAB_EXPORT void glab_graph_destroy(glab_graph* g);
GLAB_EXPORT glab_status glab_graph_info(const glab_graph* g, size_t* n, size_t* m, size_t* max_degree);
GLAB_EXPORT glab_status glab_graph_is_chordal(const glab_graph* g, int* chordal);
GLAB_EXPORT glab_status glab_clique_chromatic(const glab_graph* g, size_t* omega, size_t* chi);

GLAB_EXPORT glab_status glab_lists_uniform(const glab_graph* g, size_t k, glab_lists** out);
/* JSON {"lists": [[...], ...]} or "k=<int>". */
GLAB_EXPORT glab_status glab_lists_parse(const glab_graph* g, const char* text, glab_lists** out);
GLAB_EXPORT void glab_lists_destroy(glab_lists* l);

/* Decimal |Omega| written into buf (NUL-terminated); GLAB_INVALID_ARGUMENT if it does not fit. */
GLAB_EXPORT glab_status glab_count_colorings(const glab_graph* g, const glab_lists* l, char* buf, size_t buf_len);

/* Kempe dynamics requires uniform lists. */
GLAB_EXPORT glab_status glab_chain_build(const glab_graph* g, const glab_lists* l, glab_dynamics dyn, size_t cap,
                                         glab_chain** out);
GLAB_EXPORT void glab_chain_destroy(glab_chain* c);
GLAB_EXPORT glab_status glab_chain_size(const glab_chain* c, size_t* states);
GLAB_EXPORT glab_status glab_chain_probability(const glab_chain* c, size_t i, size_t j, double* p);
/* Writes the n colours of state i into colors. */
GLAB_EXPORT glab_status glab_chain_state(const glab_chain* c, size_t i, uint32_t* colors, size_t n);
GLAB_EXPORT glab_status glab_spectral_gap(const glab_chain* c, glab_gap_info* info);
GLAB_EXPORT glab_status glab_mixing_time(const glab_chain* c, double threshold, size_t* tau);

/* Runs a CLI-style experiment described by a JSON config. Output goes to
   out_dir (or stdout when out_dir is NULL or empty). exit_code receives 0 or 2. */
GLAB_EXPORT glab_status glab_run_experiment(const char* config_json, const char* out_dir, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
