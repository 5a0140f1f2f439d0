#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "glauberlab/coloring.hpp"
#include "glauberlab/decomposition.hpp"
#include "glauberlab/dynamics.hpp"
#include "glauberlab/graph.hpp"
#include "glauberlab/numeric.hpp"

namespace glab {

/// Half the L1 distance. Throws InvalidArgument on mismatched lengths or
/// inputs not summing to 1 within 1e-12.
double tv_distance(std::span<const double> mu, std::span<const double> nu);

enum class EigenMethod { Jacobi, PowerDeflation };
const char* to_string(EigenMethod m);

struct SpectralReport {
  std::size_t states = 0;
  EigenMethod method = EigenMethod::Jacobi;
  /// Multiplicity of eigenvalue 1 (components of the support graph).
  std::size_t unit_multiplicity = 0;
  bool ergodic = false;
  /// Single-state chain: no nonzero eigenvalue of P - I, gap taken as +inf.
  bool degenerate = false;
  /// Largest eigenvalue below the unit block, and the smallest eigenvalue.
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  /// 1 - lambda2: the operative gap for comparison arguments.
  double dirichlet_gap = 0.0;
  /// min(1 - lambda2, 1 + lambda_min).
  double absolute_gap = 0.0;
  /// lambda_min < -lambda2; `gap` then falls back to the absolute gap.
  bool negative_dominates = false;
  double gap = 0.0;
  /// 1 / gap.
  double relaxation = 0.0;
  std::optional<std::size_t> mixing_exact;
  /// Ascending, Jacobi only.
  std::vector<double> eigenvalues;
  int sweeps = 0;
  bool converged = false;
};

inline constexpr std::size_t kJacobiLimit = 2000;

/// Jacobi for |Omega| <= kJacobiLimit (unless `force_power`), otherwise
/// power iteration with deflation of the constant vector.
SpectralReport spectral_gap(const EnumeratedChain& chain, bool force_power = false);

/// Gap of a dense symmetric stochastic-similar matrix (row-major).
SpectralReport spectral_gap_dense(const std::vector<double>& symmetric, std::size_t n);

struct MixingResult {
  std::size_t tau = 0;
  /// max over starts of TV(nu_x^t, pi) for t = 0..tau.
  std::vector<double> tv_curve;
  std::size_t starts_evaluated = 0;
};

/// Least t with max-start TV <= threshold. Throws NotErgodic on reducible
/// chains and Precondition above kExactStateLimit states. Colour-symmetric
/// chains evaluate one start per colour-relabelling orbit.
MixingResult mixing_time_exact(const EnumeratedChain& chain, double threshold = 0.25,
                               std::size_t max_steps = 1000000);

/// tau_mix <= ln(4 |Omega|) tau_rel.
bool mixing_within_relaxation_bound(std::size_t tau_mix, std::size_t states, double relaxation);

struct ColorClass {
  Color color = 0;
  std::size_t states = 0;
  double restriction_gap = 0.0;
  bool degenerate = false;
};

struct ProjectionRestrictionReport {
  Vertex vertex = 0;
  std::size_t n = 0;
  std::vector<Color> colors;
  std::vector<ColorClass> classes;
  /// Smallest non-degenerate restriction gap; +inf when all are degenerate.
  double lambda_min = 0.0;
  /// |L(v)| x |L(v)| row-major, exact.
  std::vector<Rational> projection;
  std::vector<Rational> pi_bar;
  double projection_gap = 0.0;
  Rational gamma;
  double bound = 0.0;
  double full_gap = 0.0;
  bool prop_holds = false;
  bool gamma_holds = false;
};

/// Partition of Omega by the colour of v; restriction chains, projection chain
/// (aggregated from P and cross-checked against the counting formula), gamma,
/// and the spectral-gap bound. Requires deg+2 lists.
ProjectionRestrictionReport projection_restriction(const Graph& g, const ListAssignment& lists, Vertex v,
                                                   std::size_t cap = kDefaultEnumerationCap);
/// Same, reusing an already built Glauber chain and its report.
ProjectionRestrictionReport projection_restriction(const Graph& g, const ListAssignment& lists, Vertex v,
                                                   const EnumeratedChain& full, const SpectralReport& full_report);

/// lambda >= bound within `tol`.
bool projection_bound_holds(double full_gap, double bound, double tol = 1e-9);

struct RestrictionGapRow {
  Color color = 0;
  double restriction_gap = 0.0;
  double reduced_gap = 0.0;
  bool degenerate = false;
  bool holds = false;
};

struct RestrictionGapReport {
  Vertex vertex = 0;
  std::vector<RestrictionGapRow> rows;
  bool holds = false;
};

/// Per colour: restriction gap on Omega_c versus a quarter of the Glauber gap
/// on (G - v, L^{v,c}).
RestrictionGapReport restriction_gap_check(const Graph& g, const ListAssignment& lists, Vertex v,
                                           std::size_t cap = kDefaultEnumerationCap);

struct WeightedPath {
  /// State indices, first = source, last = target.
  std::vector<std::size_t> states;
  double weight = 0.0;
};

struct PathFamily {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<WeightedPath> paths;
  bool truncated = false;
};

struct PathSystem {
  std::vector<PathFamily> families;
  /// Some family was cut at the branch cap: congestion is an upper-bound surrogate.
  bool surrogate = false;
};

/// One weight-1 length-1 path per positive off-diagonal transition.
PathSystem identity_paths(const EnumeratedChain& slow);

struct CongestionRow {
  std::size_t from = 0;
  std::size_t to = 0;
  double rho = 0.0;
};

struct CongestionReport {
  double max_rho = 0.0;
  std::size_t arg_from = 0;
  std::size_t arg_to = 0;
  std::vector<CongestionRow> table;
  double tau_rel_fast = 0.0;
  double tau_rel_slow = 0.0;
  /// tau_rel(slow) * max_rho.
  double bound = 0.0;
  bool holds = false;
  bool surrogate = false;
};

/// Routes every transition of `slow` along paths of `fast` (same state space).
/// Throws WeightDeficit when a family's weights sum below 1, and
/// InvalidArgument for a path step with zero probability in `fast`.
CongestionReport congestion(const EnumeratedChain& fast, const EnumeratedChain& slow, const PathSystem& paths,
                            double tol = 1e-9);

struct KempeExchange {
  std::vector<Vertex> chain;
  Color a = 0;
  Color b = 0;
};

/// The single Kempe exchange turning alpha into beta, if there is one.
std::optional<KempeExchange> identify_kempe_exchange(const Graph& g, std::span<const Color> alpha,
                                                     std::span<const Color> beta);

inline constexpr std::size_t kDefaultBranchCap = 64;

struct GlauberPaths {
  KempeExchange exchange;
  /// Each path is a sequence of colourings, alpha first and beta last;
  /// consecutive colourings differ at one vertex.
  std::vector<std::vector<Coloring>> paths;
  bool truncated = false;
};

/// Sweep the bags of `pd`: at bag i, chain vertices whose interval starts at i
/// move to an intermediate colour (all proper choices other than alpha(v),
/// branched in ascending order), then chain vertices whose interval ends at i
/// take beta(v). No-op recolourings are dropped. At most `branch_cap` paths.
GlauberPaths kempe_to_glauber_paths(const Graph& g, std::size_t k, const PathDecomposition& pd,
                                    std::span<const Color> alpha, std::span<const Color> beta,
                                    std::size_t branch_cap = kDefaultBranchCap);

/// Paths for every Kempe transition of `slow`, as states of `fast`; uniform
/// weights per family.
PathSystem kempe_path_system(const Graph& g, std::size_t k, const PathDecomposition& pd, const EnumeratedChain& fast,
                             const EnumeratedChain& slow, std::size_t branch_cap = kDefaultBranchCap);

struct GoodPairReport {
  Rational transition;  // Pbar[c1 -> c2]
  Rational pi_source;   // pibar(c1)
  Rational pi_target;   // pibar(c2)
  Rational ratio_target;
  Rational ratio_source;
  /// K / n.
  Rational threshold;
  bool good = false;
  bool good_source = false;
};

/// Pbar[c1 -> c2] / pibar(c2) (and / pibar(c1)) against K/n, exactly.
GoodPairReport good_pair_ratio(const Graph& g, const ListAssignment& lists, Vertex v, Color c1, Color c2);

}  // namespace glab
