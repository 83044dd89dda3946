#ifndef SPEXLAB_STATS_HPP
#define SPEXLAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "spexlab/errors.hpp"

namespace spexlab {

/// Largest per-outcome deviation |c_i - N p_i| / sqrt(N p_i (1 - p_i)) of
/// multinomial counts from their expected law. Outcomes with p_i in {0, 1}
/// must match exactly; any mismatch there is reported as +inf.
inline double max_sigma_deviation(std::span<const long long> counts, std::span<const double> probs, long long trials) {
  if (counts.size() != probs.size()) throw DomainError("counts and probabilities differ in length");
  if (trials < 1) throw DomainError("need at least one trial");
  double worst = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = std::clamp(probs[i], 0.0, 1.0);
    const double expected = p * static_cast<double>(trials);
    const double var = expected * (1.0 - p);
    const double diff = std::abs(static_cast<double>(counts[i]) - expected);
    if (var <= 1e-12) {
      if (diff > 0.5) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, diff / std::sqrt(var));
  }
  return worst;
}

/// Random probability vector from normalized standard exponentials.
template <class Gen>
std::vector<double> random_probability(int n, Gen& rng) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& v : p) {
    v = rng.exponential();
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace spexlab

#endif  // SPEXLAB_STATS_HPP
