#ifndef SPEXLAB_HYPERCUBE_MODEL_HPP
#define SPEXLAB_HYPERCUBE_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spexlab/errors.hpp"

namespace spexlab {

/// Largest vertex count for which hypercube strings are enumerated explicitly.
inline constexpr std::uint64_t kExplicitHypercubeLimit = std::uint64_t{1} << 20;

/// k-ary eps-noisy hypercube on strings of length d.
///
/// One walk step rerandomizes each coordinate independently with probability
/// eps, so the per-coordinate kernel keeps a symbol with probability
/// 1 - eps + eps/k and moves to each other symbol with probability eps/k.
/// The vertex count k^d is never materialized; log_size() holds ln(k^d).
class HypercubeModel {
 public:
  HypercubeModel(int k, int d, double eps) : k_(k), d_(d), eps_(eps) {
    if (k < 2) throw DomainError("hypercube alphabet size k must be >= 2");
    if (d < 1) throw DomainError("hypercube dimension d must be >= 1");
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("hypercube noise eps must lie in [0, 1]");
    p_diff_ = eps / k;
    p_same_ = 1.0 - eps + p_diff_;
  }

  int k() const noexcept { return k_; }
  int d() const noexcept { return d_; }
  double eps() const noexcept { return eps_; }
  double p_same() const noexcept { return p_same_; }
  double p_diff() const noexcept { return p_diff_; }

  /// Probability that a nonzero coordinate becomes zero in one step.
  double p_to_zero() const noexcept { return p_diff_; }
  /// Probability that a zero coordinate becomes nonzero in one step.
  double p_from_zero() const noexcept { return eps_ * (k_ - 1) / k_; }

  /// The monotonicity of ball stay weights needs eps <= 1/2.
  bool monotone_regime() const noexcept { return eps_ <= 0.5; }

  double log_size() const noexcept { return d_ * std::log(static_cast<double>(k_)); }

  /// k^d when it fits the explicit limit, otherwise 0.
  std::uint64_t explicit_size() const noexcept {
    std::uint64_t n = 1;
    for (int i = 0; i < d_; ++i) {
      n *= static_cast<std::uint64_t>(k_);
      if (n > kExplicitHypercubeLimit) return 0;
    }
    return n;
  }

  /// Digits of vertex `index` (coordinate i is digit i in base k).
  std::vector<int> decode(std::uint64_t index) const {
    std::vector<int> x(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) {
      x[i] = static_cast<int>(index % static_cast<std::uint64_t>(k_));
      index /= static_cast<std::uint64_t>(k_);
    }
    return x;
  }

 private:
  int k_;
  int d_;
  double eps_;
  double p_same_ = 1.0;
  double p_diff_ = 0.0;
};

/// Number of nonzero coordinates.
inline int hamming_weight(std::span<const int> x) {
  int w = 0;
  for (int c : x) w += (c != 0);
  return w;
}

/// w(x, y) = p_same^{#agreements} * p_diff^{#disagreements}.
inline double pair_weight(const HypercubeModel& m, std::span<const int> x, std::span<const int> y) {
  if (x.size() != static_cast<std::size_t>(m.d()) || y.size() != x.size()) {
    throw DomainError("hypercube strings must have length d");
  }
  int agree = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= m.k() || y[i] < 0 || y[i] >= m.k()) {
      throw DomainError("hypercube symbol outside alphabet {0..k-1}");
    }
    agree += (x[i] == y[i]);
  }
  const int disagree = m.d() - agree;
  return std::pow(m.p_same(), agree) * std::pow(m.p_diff(), disagree);
}

}  // namespace spexlab

#endif  // SPEXLAB_HYPERCUBE_MODEL_HPP
