#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glauberlab/coloring.hpp"
#include "glauberlab/graph.hpp"
#include "glauberlab/numeric.hpp"
#include "glauberlab/rng.hpp"

namespace glab {

/// Constants derived from the chromatic number.
struct BoundsConstants {
  std::size_t chi = 0;
  /// 24 (chi - 1), as defined.
  std::size_t alpha_chi = 0;
  /// 24 max(chi - 1, 1): the value used inside inequalities, so that an
  /// edgeless graph (chi = 1) does not divide by zero.
  std::size_t alpha = 0;
  /// 2^(-8 alpha_chi^2), stored as printed; never used as a checked inequality.
  Rational c_chi;
  /// 2^(-6 alpha) / alpha.
  Rational k_good;
  /// 6 alpha_chi^2.
  std::size_t a_const = 0;
};

BoundsConstants bounds_constants(std::size_t chi);
/// Uses the exact chromatic number of g (small-n cap applies).
BoundsConstants bounds_constants(const Graph& g);

enum class Verdict { Pass, Fail, Vacuous };
const char* to_string(Verdict v);

struct TechBoundVerdict {
  Verdict verdict = Verdict::Vacuous;
  Rational product;    // prod (1 - x_i)
  Rational eps_pow_a;  // eps^A
  Rational sum;        // sum x_i
  Rational target;     // (1 - eps) A
};

/// If prod(1 - x_i) <= eps^A then sum x_i >= (1 - eps) A. Malformed parameters
/// (A or k zero, |xs| != k, eps outside (0,1)) throw InvalidArgument; inputs
/// outside the hypotheses (k < A, some x_i outside [0, 1 - eps], or the
/// product above eps^A) report Vacuous.
TechBoundVerdict check_tech_bound(std::size_t a, std::size_t k, const Rational& eps, const std::vector<Rational>& xs);

/// Exact two-sided comparison.
struct CountVerdict {
  bool pass = false;
  Rational lhs;
  Rational rhs;
  /// Strict variant, where the check defines one.
  std::optional<bool> strict_pass;
  std::optional<Rational> strict_rhs;
};

/// |Omega_{G,L}| >= max(|L(v)|/alpha, 2) |Omega_{G-v,L}|.
CountVerdict verify_lemma_bound_Gv(const Graph& g, const ListAssignment& lists, Vertex v,
                                   std::optional<std::size_t> chi = std::nullopt);

/// |Omega_{G-v,L^{v,c}}| / |Omega_{G,L}| <= min(1/2, alpha/|L(v)|).
CountVerdict verify_cor_distrib(const Graph& g, const ListAssignment& lists, Vertex v, Color c,
                                std::optional<std::size_t> chi = std::nullopt);

/// |Omega_{G-v,L^{v,c}}| / |Omega_{G-v,L}| >=
///   prod_{w in N(v)} (1 - min(alpha [c in L(w)] / |L(w)|, 1/2)).
/// The strict variant uses |L(w) \ {c}| in the denominator.
CountVerdict verify_countLB(const Graph& g, const ListAssignment& lists, Vertex v, Color c,
                            std::optional<std::size_t> chi = std::nullopt);

/// All non-isomorphic graphs on exactly n vertices (n <= 6), in increasing
/// order of their canonical edge bitmask.
std::vector<Graph> nonisomorphic_graphs(std::size_t n);

struct GraphCorpus {
  std::vector<Graph> graphs;
  /// FNV-1a over the serialised corpus, as 16 hex digits.
  std::string digest;
};

/// Graphs on 1..max_n vertices.
GraphCorpus graph_corpus(std::size_t max_n);

/// FNV-1a (64-bit) hex digest of a graph's "n m u v u v ..." serialisation.
std::string graph_digest(const Graph& g);
std::string lists_digest(const ListAssignment& lists);

/// Each list has size deg(v) + 2 or deg(v) + 3, drawn from {0..Delta+3}.
ListAssignment random_deg_plus_two_lists(const Graph& g, RngStream& rng);

struct SweepRow {
  std::string graph_digest;
  std::string lists_digest;
  std::string check;
  Vertex vertex = 0;
  std::optional<Color> color;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Violating rows (and every row when `keep_all` was requested).
  std::vector<SweepRow> rows;
};

/// Runs the counting checks for every graph in the corpus with
/// `assignments_per_graph` random deg+2 list assignments each.
SweepSummary counting_sweep(const GraphCorpus& corpus, std::size_t assignments_per_graph, std::uint64_t seed,
                            bool keep_all = false);

struct TechSweepSummary {
  std::size_t tuples = 0;
  std::size_t vacuous_draws = 0;
  std::size_t violations = 0;
};

/// Rejection-samples `tuples` hypothesis-satisfying inputs with A <= 4, k <= 8.
TechSweepSummary tech_bound_sweep(std::size_t tuples, std::uint64_t seed);

}  // namespace glab
