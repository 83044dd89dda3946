#ifndef SPEXLAB_LS_CURVE_HPP
#define SPEXLAB_LS_CURVE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/walks.hpp"

namespace spexlab {

/// Piecewise-linear concave curve on [0, W].
///
/// C(p, x) = max <c, p> over c in [0,1]^n with <c, widths> = x. Vertices are
/// taken greedily in decreasing order of p(i)/width(i); equal densities merge
/// into one segment, so breakpoints are strictly increasing. Evaluation
/// outside [0, W] clamps to the nearest endpoint.
class ConcaveCurve {
 public:
  ConcaveCurve() : xs_{0.0}, ys_{0.0} {}

  ConcaveCurve(std::span<const double> widths, std::span<const double> mass) {
    if (widths.size() != mass.size()) throw DomainError("curve: mass vector length does not match graph");
    std::vector<std::size_t> order;
    order.reserve(mass.size());
    for (std::size_t i = 0; i < mass.size(); ++i) {
      if (!std::isfinite(mass[i])) throw DomainError("curve: mass entries must be finite");
      if (widths[i] > 0.0) {
        order.push_back(i);
      } else if (mass[i] != 0.0) {
        throw DomainError("curve: nonzero mass on a zero-degree vertex");
      }
    }
    const auto density = [&](std::size_t i) { return mass[i] / widths[i]; };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return density(a) > density(b); });
    xs_.push_back(0.0);
    ys_.push_back(0.0);
    double x = 0.0;
    double y = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      x += widths[order[k]];
      y += mass[order[k]];
      const bool tie_next = k + 1 < order.size() && density(order[k + 1]) == density(order[k]);
      if (!tie_next) {
        xs_.push_back(x);
        ys_.push_back(y);
      }
    }
  }

  /// Curve of a mass vector on graph g (widths are the degrees).
  ConcaveCurve(const WeightedGraph& g, std::span<const double> mass) : ConcaveCurve(g.degrees(), mass) {}

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= xs_.back()) return ys_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
    const std::size_t lo = hi - 1;
    const double frac = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + frac * (ys_[hi] - ys_[lo]);
  }

  /// Smallest x with C(x) >= y (up to rounding); width() when y exceeds the total.
  double first_reach(double y) const {
    if (y <= 0.0) return 0.0;
    const double tol = 1e-14 * std::max(1.0, std::abs(y));
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      if (ys_[i] >= y - tol) {
        const double rise = ys_[i] - ys_[i - 1];
        if (rise <= 0.0) return xs_[i - 1];
        return xs_[i - 1] + (xs_[i] - xs_[i - 1]) * std::clamp((y - ys_[i - 1]) / rise, 0.0, 1.0);
      }
    }
    return xs_.back();
  }

  std::span<const double> breakpoints() const noexcept { return xs_; }
  std::span<const double> values() const noexcept { return ys_; }
  double width() const noexcept { return xs_.back(); }
  double total() const noexcept { return ys_.back(); }

  /// Largest increase of slope between consecutive segments; <= 0 for a
  /// concave curve.
  double max_slope_increase() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 2; i < xs_.size(); ++i) {
      const double s0 = (ys_[i - 1] - ys_[i - 2]) / (xs_[i - 1] - xs_[i - 2]);
      const double s1 = (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
      worst = std::max(worst, s1 - s0);
    }
    return xs_.size() > 2 ? worst : 0.0;
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

inline ConcaveCurve curve_of(const WeightedGraph& g, std::span<const double> p) { return ConcaveCurve(g, p); }

/// Parameters (a, b) of the curve-dominance hypothesis C(d_S, a vol(S)) <= b vol(S).
class CurveDominanceParams {
 public:
  CurveDominanceParams(double a, double b) : a_(a), b_(b) {
    if (!(a > 1.0) || !(b > 0.0 && b < 1.0) || !std::isfinite(a)) {
      throw DomainError("curve dominance parameters need a > 1 and 0 < b < 1");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// Balancing threshold t = (b - b^2) / (a - b^2).
  double threshold() const noexcept { return (b_ - b_ * b_) / (a_ - b_ * b_); }
  /// Weight of C(p, b x) in the dominance bound.
  double low_coefficient() const noexcept { return (a_ - b_) / (a_ - b_ * b_); }
  /// Weight of C(p, a x / b) in the dominance bound.
  double high_coefficient() const noexcept { return threshold(); }
  /// Upper-area bound above the threshold, as a multiple of vol(S).
  double area_factor() const noexcept { return b_ * (a_ - b_) / (a_ - b_ * b_); }

  /// Per-step contraction (sqrt a - sqrt b)(1 - sqrt b) / (sqrt a + b).
  double decay() const noexcept {
    const double sa = std::sqrt(a_);
    const double sb = std::sqrt(b_);
    return (sa - sb) * (1.0 - sb) / (sa + b_);
  }

 private:
  double a_;
  double b_;
};

namespace detail {
inline void require_curve_point(const WeightedGraph& g, double x) {
  if (!(x >= 0.0) || x > g.volume() / 2 + kRegularTolerance) {
    throw DomainError("curve point must lie in [0, vol(V)/2]");
  }
}
}  // namespace detail

/// Right side minus left side of C(Ap, x) <= (C(p, x(1-gap)) + C(p, x(1+gap))) / 2.
inline double chord_slack(const WeightedGraph& g, std::span<const double> p, int x, double gap) {
  require_unit_regular(g, "chord_slack");
  if (x < 1 || 2 * x > g.size()) throw DomainError("chord_slack needs integral 1 <= x <= n/2");
  const ConcaveCurve before(g, p);
  const ConcaveCurve after(g, walk_step(g, p));
  return 0.5 * (before(x * (1.0 - gap)) + before(x * (1.0 + gap))) - after(x);
}

/// Right side minus left side of the dominance bound
/// C(Ap, x) <= low * C(p, b x) + high * C(p, a x / b).
inline double dominance_slack(const WeightedGraph& g, std::span<const double> p, double x,
                              const CurveDominanceParams& params) {
  detail::require_curve_point(g, x);
  const ConcaveCurve before(g, p);
  const ConcaveCurve after(g, walk_step(g, p));
  return params.low_coefficient() * before(params.b() * x) +
         params.high_coefficient() * before(params.a() * x / params.b()) - after(x);
}

/// x/n + c sqrt(min{x, n-x}) (1 - decay(a, b))^t.
inline double convergence_envelope(const CurveDominanceParams& params, double c, int t, double x, double n) {
  if (c < 0.0 || t < 0 || x < 0.0 || x > n) throw DomainError("convergence_envelope argument out of range");
  return x / n + c * std::sqrt(std::min(x, n - x)) * std::pow(1.0 - params.decay(), t);
}

/// x/n + sqrt(x) (1 - gap^2/8)^t.
inline double gap_envelope(double gap, int t, double x, double n) {
  return x / n + std::sqrt(x) * std::pow(1.0 - gap * gap / 8.0, t);
}

}  // namespace spexlab

#endif  // SPEXLAB_LS_CURVE_HPP
