#pragma once

#include <cstddef>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace stats {

/// Pearson statistic accumulated over several independent multinomial samples.
struct ChiSquare {
  double statistic = 0.0;
  std::size_t df = 0;

  /// Bins with zero expected probability must be empty; they add nothing.
  /// Returns false if a zero-probability bin was hit.
  bool add(const std::vector<double>& probs, const std::vector<std::size_t>& counts) {
    std::size_t total = 0;
    for (auto c : counts) total += c;
    std::size_t bins = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) {
        if (counts[i] != 0) return false;
        continue;
      }
      const double e = probs[i] * static_cast<double>(total);
      const double d = static_cast<double>(counts[i]) - e;
      statistic += d * d / e;
      ++bins;
    }
    if (bins > 0) df += bins - 1;
    return true;
  }

  double p_value() const {
    if (df == 0) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(df));
    return boost::math::cdf(boost::math::complement(dist, statistic));
  }
};

}  // namespace stats
