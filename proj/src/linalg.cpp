#include "glauberlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glauberlab/error.hpp"
#include "glauberlab/rng.hpp"

namespace glab {

namespace {

double off_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
  }
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, bool want_vectors, double tol, int max_sweeps) {
  if (a.size() != n * n) fail(ErrorCode::InvalidArgument, "matrix size does not match dimension");
  SymmetricEigen out;
  out.n = n;
  std::vector<double> v;
  if (want_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  while (true) {
    if (off_norm(a, n) <= tol) {
      out.converged = true;
      break;
    }
    if (out.sweeps >= max_sweeps) break;
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p], vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = a[order[j] * n + order[j]];
  if (want_vectors) {
    out.vectors.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out.vectors[i * n + j] = v[i * n + order[j]];
    }
  }
  return out;
}

PowerResult power_iteration(const SymmetricOperator& op, std::size_t n, const std::vector<std::vector<double>>& deflate,
                            std::size_t max_iterations, double tol, unsigned long long seed) {
  PowerResult out;
  if (n == 0) return out;
  auto project = [&](std::vector<double>& x) {
    for (const auto& d : deflate) {
      const double dot = std::inner_product(x.begin(), x.end(), d.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) x[i] -= dot * d[i];
    }
  };
  auto normalise = [&](std::vector<double>& x) {
    const double nrm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (nrm == 0.0) return false;
    for (double& xi : x) xi /= nrm;
    return true;
  };
  RngStream rng(seed, 0x706f776572ULL);
  std::vector<double> x(n), y(n);
  for (double& xi : x) xi = rng.uniform() - 0.5;
  project(x);
  if (!normalise(x)) return out;
  double prev = 0.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    op(x, y);
    project(y);
    const double rq = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    out.value = rq;
    out.iterations = it;
    if (!normalise(y)) {
      out.value = 0.0;
      out.converged = true;
      return out;
    }
    x.swap(y);
    if (it > 1 && std::abs(rq - prev) <= tol * std::max(1.0, std::abs(rq))) {
      out.converged = true;
      return out;
    }
    prev = rq;
  }
  return out;
}

}  // namespace glab
