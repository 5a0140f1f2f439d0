#include "glauberlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "glauberlab/error.hpp"

namespace glab {

namespace {

void require_proper(const Graph& g, std::span<const Color> sigma) {
  if (sigma.size() != g.size()) {
    fail(ErrorCode::InvalidArgument, "colouring has " + std::to_string(sigma.size()) + " entries, graph has " +
                                         std::to_string(g.size()) + " vertices");
  }
  if (auto e = monochromatic_edge(g, sigma)) {
    fail(ErrorCode::Improper, "monochromatic edge (" + std::to_string(e->first) + "," + std::to_string(e->second) +
                                  ") in input colouring");
  }
}

bool blocked(const Graph& g, std::span<const Color> sigma, Vertex v, Color c) {
  for (Vertex w : g.neighbors(v)) {
    if (sigma[w] == c) return true;
  }
  return false;
}

// 2^126: the largest denominator for which D plus a row of numerators stays
// clear of int128 overflow.
const Exact kExactLimit = Exact(1) << 126;

Exact lcm_exact(const Exact& a, const Exact& b) {
  Exact x = a, y = b;
  while (y != 0) {
    Exact t = x % y;
    x = y;
    y = t;
  }
  return a / x * b;
}

struct RowBuilder {
  std::vector<std::pair<std::size_t, Exact>> exact;
  std::vector<std::pair<std::size_t, double>> real;
};

std::vector<MatrixEntry> finish_row(std::size_t self, RowBuilder& rb, NumericMode mode, const Exact& den) {
  std::vector<MatrixEntry> row;
  if (mode == NumericMode::Exact) {
    std::sort(rb.exact.begin(), rb.exact.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Exact off = 0;
    for (const auto& [col, num] : rb.exact) {
      off += num;
      if (!row.empty() && row.back().col == col) {
        row.back().numerator += num;
      } else {
        row.push_back({col, 0.0, num});
      }
    }
    const Exact diag = den - off;
    if (diag < 0) fail(ErrorCode::Internal, "row " + std::to_string(self) + " has off-diagonal mass above 1");
    if (diag != 0) {
      auto it = std::lower_bound(row.begin(), row.end(), self,
                                 [](const MatrixEntry& e, std::size_t c) { return e.col < c; });
      row.insert(it, MatrixEntry{self, 0.0, diag});
    }
    for (auto& e : row) e.value = static_cast<double>(e.numerator) / static_cast<double>(den);
  } else {
    std::sort(rb.real.begin(), rb.real.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    double off = 0.0;
    for (const auto& [col, val] : rb.real) {
      off += val;
      if (!row.empty() && row.back().col == col) {
        row.back().value += val;
      } else {
        row.push_back({col, val, 0});
      }
    }
    const double diag = 1.0 - off;
    if (diag < -1e-12) fail(ErrorCode::Internal, "row " + std::to_string(self) + " has off-diagonal mass above 1");
    if (diag > 0.0) {
      auto it = std::lower_bound(row.begin(), row.end(), self,
                                 [](const MatrixEntry& e, std::size_t c) { return e.col < c; });
      row.insert(it, MatrixEntry{self, diag, 0});
    }
  }
  return row;
}

NumericMode choose_mode(std::size_t states, const Exact& den) {
  return (states <= kExactStateLimit && den > 0 && den < kExactLimit) ? NumericMode::Exact : NumericMode::Float;
}

std::size_t lookup(const ColoringSpace& space, std::span<const Color> c) {
  auto idx = space.index_of(c);
  if (!idx) fail(ErrorCode::Internal, "transition leaves the enumerated state space");
  return *idx;
}

void check_space(const Graph& g, const ColoringSpace& space) {
  if (space.vertex_count() != g.size()) {
    fail(ErrorCode::InvalidArgument, "state space was enumerated for a different vertex count");
  }
}

}  // namespace

const char* to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::Glauber: return "glauber";
    case ChainKind::Kempe: return "kempe";
    case ChainKind::Derived: return "derived";
  }
  return "?";
}

const char* to_string(NumericMode mode) { return mode == NumericMode::Exact ? "exact" : "float"; }

const char* to_string(Dynamics d) { return d == Dynamics::Glauber ? "glauber" : "kempe"; }

Coloring glauber_apply(const Graph& g, std::span<const Color> sigma, Vertex v, Color c, bool* accepted) {
  Coloring out(sigma.begin(), sigma.end());
  const bool ok = !blocked(g, sigma, v, c);
  if (ok) out[v] = c;
  if (accepted) *accepted = ok && sigma[v] != c;
  return out;
}

Coloring glauber_step(const Graph& g, const ListAssignment& lists, std::span<const Color> sigma, RngStream& rng,
                      StepInfo* info) {
  require_proper(g, sigma);
  if (g.size() == 0) return {};
  const auto v = static_cast<Vertex>(rng.below(g.size()));
  const auto l = lists.list(v);
  const Color c = l[rng.below(l.size())];
  bool accepted = false;
  Coloring out = glauber_apply(g, sigma, v, c, &accepted);
  if (info) *info = {v, c, 1, accepted};
  return out;
}

std::vector<Vertex> kempe_chain(const Graph& g, std::span<const Color> sigma, Vertex v, Color c) {
  const Color a = sigma[v];
  if (c == a) return {v};
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> chain{v};
  seen[v] = true;
  for (std::size_t head = 0; head < chain.size(); ++head) {
    for (Vertex w : g.neighbors(chain[head])) {
      if (!seen[w] && (sigma[w] == a || sigma[w] == c)) {
        seen[w] = true;
        chain.push_back(w);
      }
    }
  }
  std::sort(chain.begin(), chain.end());
  return chain;
}

Coloring swap_colors(std::span<const Color> sigma, std::span<const Vertex> chain, Color a, Color b) {
  Coloring out(sigma.begin(), sigma.end());
  for (Vertex u : chain) {
    if (out[u] == a) {
      out[u] = b;
    } else if (out[u] == b) {
      out[u] = a;
    }
  }
  return out;
}

Coloring kempe_step(const Graph& g, std::size_t k, std::span<const Color> sigma, RngStream& rng, StepInfo* info) {
  require_proper(g, sigma);
  for (Color c : sigma) {
    if (c >= k) fail(ErrorCode::Improper, "colour " + std::to_string(c) + " outside 0.." + std::to_string(k - 1));
  }
  if (g.size() == 0) return {};
  const auto v = static_cast<Vertex>(rng.below(g.size()));
  const auto c = static_cast<Color>(rng.below(k));
  if (c == sigma[v]) {
    if (info) *info = {v, c, 1, false};
    return Coloring(sigma.begin(), sigma.end());
  }
  const auto chain = kempe_chain(g, sigma, v, c);
  const bool accept = rng.one_in(chain.size());
  if (info) *info = {v, c, chain.size(), accept};
  if (!accept) return Coloring(sigma.begin(), sigma.end());
  return swap_colors(sigma, chain, sigma[v], c);
}

std::vector<KemSlot> kem_set(const Graph& g, std::size_t k, std::span<const Color> sigma) {
  require_proper(g, sigma);
  const std::size_t n = g.size();
  const Rational slot_mass(BigInt(1), BigInt(n * k));
  std::vector<KemSlot> slots;
  slots.reserve(n * k);
  for (Vertex v = 0; v < n; ++v) {
    for (Color c = 0; c < k; ++c) {
      KemSlot s;
      s.vertex = v;
      s.color = c;
      s.from = sigma[v];
      s.to = c;
      if (c == sigma[v]) {
        s.exchange_weight = 0;
        s.idle_weight = slot_mass;
      } else {
        s.chain = kempe_chain(g, sigma, v, c);
        s.exchange_weight = slot_mass / static_cast<unsigned>(s.chain.size());
        s.idle_weight = slot_mass - s.exchange_weight;
      }
      slots.push_back(std::move(s));
    }
  }
  return slots;
}

EnumeratedChain::EnumeratedChain(ChainKind kind, std::shared_ptr<const ColoringSpace> space, NumericMode mode,
                                 Exact denominator, std::vector<std::vector<MatrixEntry>> rows, bool color_symmetric)
    : kind_(kind),
      space_(std::move(space)),
      mode_(mode),
      denominator_(mode == NumericMode::Exact ? denominator : Exact(0)),
      rows_(std::move(rows)),
      color_symmetric_(color_symmetric) {
  if (!space_ || space_->size() != rows_.size()) {
    fail(ErrorCode::InvalidArgument, "transition matrix does not match its state space");
  }
}

double EnumeratedChain::probability(std::size_t i, std::size_t j) const {
  const auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const MatrixEntry& e, std::size_t c) { return e.col < c; });
  return (it != r.end() && it->col == j) ? it->value : 0.0;
}

Rational EnumeratedChain::exact_probability(std::size_t i, std::size_t j) const {
  if (mode_ != NumericMode::Exact) fail(ErrorCode::Precondition, "exact entries requested from a float-mode chain");
  const auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const MatrixEntry& e, std::size_t c) { return e.col < c; });
  if (it == r.end() || it->col != j) return 0;
  return Rational(BigInt(it->numerator), BigInt(denominator_));
}

std::size_t EnumeratedChain::nonzeros() const {
  std::size_t nz = 0;
  for (const auto& r : rows_) nz += r.size();
  return nz;
}

std::vector<double> EnumeratedChain::dense() const {
  const std::size_t n = size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : rows_[i]) out[i * n + e.col] = e.value;
  }
  return out;
}

double EnumeratedChain::stochastic_defect() const {
  const std::size_t n = size();
  if (mode_ == NumericMode::Exact) {
    std::vector<Exact> cols(n, 0);
    bool exact_ok = true;
    for (const auto& r : rows_) {
      Exact s = 0;
      for (const auto& e : r) {
        s += e.numerator;
        cols[e.col] += e.numerator;
      }
      exact_ok = exact_ok && s == denominator_;
    }
    for (const auto& c : cols) exact_ok = exact_ok && c == denominator_;
    if (exact_ok) return 0.0;
  }
  std::vector<double> cols(n, 0.0);
  double worst = 0.0;
  for (const auto& r : rows_) {
    double s = 0.0;
    for (const auto& e : r) {
      s += e.value;
      cols[e.col] += e.value;
    }
    worst = std::max(worst, std::abs(s - 1.0));
  }
  for (double c : cols) worst = std::max(worst, std::abs(c - 1.0));
  // An exact-mode defect must never report as zero.
  if (mode_ == NumericMode::Exact && worst == 0.0) worst = 1e-300;
  return worst;
}

bool EnumeratedChain::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& e : rows_[i]) {
      if (e.col <= i) continue;
      const auto& r = rows_[e.col];
      auto it = std::lower_bound(r.begin(), r.end(), i, [](const MatrixEntry& x, std::size_t c) { return x.col < c; });
      if (it == r.end() || it->col != i) return false;
      if (mode_ == NumericMode::Exact) {
        if (it->numerator != e.numerator) return false;
      } else if (std::abs(it->value - e.value) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool EnumeratedChain::is_doubly_stochastic(double tol) const {
  const double d = stochastic_defect();
  return mode_ == NumericMode::Exact ? d == 0.0 : d <= tol;
}

bool EnumeratedChain::uniform_is_stationary(double tol) const {
  // (pi P)_j = (1/N) * column sum j, so stationarity of uniform pi is exactly
  // unit column sums.
  const std::size_t n = size();
  if (mode_ == NumericMode::Exact) {
    std::vector<Exact> cols(n, 0);
    for (const auto& r : rows_) {
      for (const auto& e : r) cols[e.col] += e.numerator;
    }
    return std::all_of(cols.begin(), cols.end(), [&](const Exact& c) { return c == denominator_; });
  }
  std::vector<double> cols(n, 0.0);
  for (const auto& r : rows_) {
    for (const auto& e : r) cols[e.col] += e.value;
  }
  return std::all_of(cols.begin(), cols.end(), [&](double c) { return std::abs(c - 1.0) <= tol; });
}

std::size_t EnumeratedChain::support_components() const {
  const std::size_t n = size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t comps = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : rows_[i]) {
      if (e.value <= 0.0 && e.numerator == 0) continue;
      const std::size_t a = find(i), b = find(e.col);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
  }
  return comps;
}

EnumeratedChain glauber_matrix(const Graph& g, const ListAssignment& lists, std::shared_ptr<const ColoringSpace> space) {
  check_space(g, *space);
  const std::size_t n = g.size();
  Exact den = 0;
  if (n > 0) {
    Exact l = 1;
    for (Vertex v = 0; v < n && l < kExactLimit; ++v) l = lcm_exact(l, Exact(lists.list(v).size()));
    den = l < kExactLimit ? l * Exact(n) : Exact(0);
  }
  const NumericMode mode = choose_mode(space->size(), den);
  std::vector<std::vector<MatrixEntry>> rows(space->size());
  Coloring work;
  for (std::size_t i = 0; i < space->size(); ++i) {
    const auto sigma = space->at(i);
    work.assign(sigma.begin(), sigma.end());
    RowBuilder rb;
    for (Vertex v = 0; v < n; ++v) {
      const auto l = lists.list(v);
      for (Color c : l) {
        if (c == sigma[v] || blocked(g, sigma, v, c)) continue;
        work[v] = c;
        const std::size_t j = lookup(*space, work);
        work[v] = sigma[v];
        if (mode == NumericMode::Exact) {
          rb.exact.emplace_back(j, den / (Exact(n) * Exact(l.size())));
        } else {
          rb.real.emplace_back(j, 1.0 / (static_cast<double>(n) * static_cast<double>(l.size())));
        }
      }
    }
    rows[i] = finish_row(i, rb, mode, den);
  }
  return EnumeratedChain(ChainKind::Glauber, std::move(space), mode, den, std::move(rows),
                         lists.uniform_size().has_value());
}

EnumeratedChain glauber_matrix(const Graph& g, const ListAssignment& lists, std::size_t cap) {
  return glauber_matrix(g, lists, std::make_shared<const ColoringSpace>(enumerate_colorings(g, lists, cap)));
}

EnumeratedChain kempe_matrix(const Graph& g, std::size_t k, std::shared_ptr<const ColoringSpace> space) {
  check_space(g, *space);
  if (k == 0) fail(ErrorCode::InvalidArgument, "Kempe dynamics needs k >= 1");
  const std::size_t n = g.size();
  Exact den = 0;
  if (n > 0) {
    Exact l = 1;
    for (std::size_t s = 2; s <= n && l < kExactLimit; ++s) l = lcm_exact(l, Exact(s));
    den = l < kExactLimit ? l * Exact(n) * Exact(k) : Exact(0);
    if (den >= kExactLimit) den = 0;
  }
  const NumericMode mode = choose_mode(space->size(), den);
  std::vector<std::vector<MatrixEntry>> rows(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    const auto sigma = space->at(i);
    for (Color c : sigma) {
      if (c >= k) fail(ErrorCode::InvalidArgument, "state space uses colour " + std::to_string(c) + " >= k");
    }
    RowBuilder rb;
    for (Vertex v = 0; v < n; ++v) {
      for (Color c = 0; c < k; ++c) {
        if (c == sigma[v]) continue;
        const auto chain = kempe_chain(g, sigma, v, c);
        const std::size_t j = lookup(*space, swap_colors(sigma, chain, sigma[v], c));
        const std::size_t nkc = n * k * chain.size();
        if (mode == NumericMode::Exact) {
          rb.exact.emplace_back(j, den / Exact(nkc));
        } else {
          rb.real.emplace_back(j, 1.0 / static_cast<double>(nkc));
        }
      }
    }
    rows[i] = finish_row(i, rb, mode, den);
  }
  return EnumeratedChain(ChainKind::Kempe, std::move(space), mode, den, std::move(rows), true);
}

EnumeratedChain kempe_matrix(const Graph& g, std::size_t k, std::size_t cap) {
  const ListAssignment lists = uniform_lists(g, k);
  return kempe_matrix(g, k, std::make_shared<const ColoringSpace>(enumerate_colorings(g, lists, cap)));
}

EnumeratedChain halved_chain(const EnumeratedChain& chain) {
  const Exact den = chain.denominator() * 2;
  const NumericMode mode =
      (chain.mode() == NumericMode::Exact && den < kExactLimit) ? NumericMode::Exact : NumericMode::Float;
  std::vector<std::vector<MatrixEntry>> rows(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    RowBuilder rb;
    for (const auto& e : chain.row(i)) {
      if (e.col == i) continue;
      if (mode == NumericMode::Exact) {
        rb.exact.emplace_back(e.col, e.numerator);
      } else {
        rb.real.emplace_back(e.col, e.value / 2.0);
      }
    }
    rows[i] = finish_row(i, rb, mode, den);
  }
  return EnumeratedChain(ChainKind::Derived, chain.shared_space(), mode, den, std::move(rows),
                         chain.color_symmetric());
}

EnumeratedChain restricted_chain(const EnumeratedChain& chain, std::span<const std::size_t> states) {
  if (!std::is_sorted(states.begin(), states.end()) ||
      std::adjacent_find(states.begin(), states.end()) != states.end()) {
    fail(ErrorCode::InvalidArgument, "restricted state list must be strictly increasing");
  }
  const auto& space = chain.space();
  std::vector<Color> flat;
  flat.reserve(states.size() * space.vertex_count());
  for (std::size_t s : states) {
    if (s >= chain.size()) fail(ErrorCode::InvalidArgument, "state index out of range");
    const auto c = space.at(s);
    flat.insert(flat.end(), c.begin(), c.end());
  }
  auto sub = std::make_shared<const ColoringSpace>(space.vertex_count(), std::move(flat));
  std::vector<std::vector<MatrixEntry>> rows(states.size());
  for (std::size_t a = 0; a < states.size(); ++a) {
    RowBuilder rb;
    for (const auto& e : chain.row(states[a])) {
      if (e.col == states[a]) continue;
      auto it = std::lower_bound(states.begin(), states.end(), e.col);
      if (it == states.end() || *it != e.col) continue;
      const auto b = static_cast<std::size_t>(it - states.begin());
      if (chain.mode() == NumericMode::Exact) {
        rb.exact.emplace_back(b, e.numerator);
      } else {
        rb.real.emplace_back(b, e.value);
      }
    }
    rows[a] = finish_row(a, rb, chain.mode(), chain.denominator());
  }
  return EnumeratedChain(ChainKind::Derived, std::move(sub), chain.mode(), chain.denominator(), std::move(rows),
                         false);
}

TraceSummary run_sampler(const Graph& g, const ListAssignment& lists, Dynamics dynamics, Coloring start,
                         std::size_t steps, RngStream& rng, const ColoringSpace* space, std::ostream* trace) {
  std::size_t k = 0;
  if (dynamics == Dynamics::Kempe) {
    auto u = lists.uniform_size();
    if (!u) fail(ErrorCode::InvalidArgument, "Kempe dynamics needs uniform lists");
    k = *u;
  }
  if (!is_proper(g, lists, start)) fail(ErrorCode::Improper, "start colouring is not a proper L-colouring");
  TraceSummary out{std::move(start), 0};
  StepInfo info;
  for (std::size_t t = 0; t < steps; ++t) {
    out.final_state = dynamics == Dynamics::Glauber ? glauber_step(g, lists, out.final_state, rng, &info)
                                                    : kempe_step(g, k, out.final_state, rng, &info);
    if (info.accepted) ++out.accepted;
    if (trace) {
      long long idx = -1;
      if (space) {
        if (auto i = space->index_of(out.final_state)) idx = static_cast<long long>(*i);
      }
      *trace << t << '\t' << info.vertex << '\t' << info.color << '\t' << (info.accepted ? 1 : 0) << '\t' << idx
             << '\n';
    }
  }
  return out;
}

}  // namespace glab
