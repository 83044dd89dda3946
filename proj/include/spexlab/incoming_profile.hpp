#ifndef SPEXLAB_INCOMING_PROFILE_HPP
#define SPEXLAB_INCOMING_PROFILE_HPP

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "spexlab/graph.hpp"
#include "spexlab/ls_curve.hpp"

namespace spexlab {

/// The bar chart of a set S: bar i has width deg(i) and height
/// q(i) = d_S(i)/deg(i) with d_S(i) = w(i, S). On unit-regular graphs the
/// heights are d_S itself and sum to |S|.
class IncomingProfile {
 public:
  IncomingProfile(const WeightedGraph& g, const VertexSet& s)
      : set_(s), incoming_(incoming_weights(g, s)), widths_(g.degrees().begin(), g.degrees().end()) {
    set_volume_ = volume(g, s);
    heights_.resize(incoming_.size());
    for (std::size_t i = 0; i < incoming_.size(); ++i) {
      heights_[i] = widths_[i] > 0.0 ? std::clamp(incoming_[i] / widths_[i], 0.0, 1.0) : 0.0;
    }
    order_.resize(incoming_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return heights_[a] > heights_[b]; });
  }

  const VertexSet& set() const noexcept { return set_; }
  double set_volume() const noexcept { return set_volume_; }

  /// d_S(i) = w(i, S).
  std::span<const double> incoming() const noexcept { return incoming_; }
  /// d_S(i)/deg(i), clamped to [0, 1].
  std::span<const double> heights() const noexcept { return heights_; }
  std::span<const double> widths() const noexcept { return widths_; }
  /// Vertices by height descending, ties by index.
  std::span<const Vertex> order() const noexcept { return order_; }

  /// Area above threshold t: sum_i deg(i) max{q(i) - t, 0}.
  double upper_area(double t) const {
    double x = 0.0;
    for (std::size_t i = 0; i < heights_.size(); ++i) x += widths_[i] * std::max(heights_[i] - t, 0.0);
    return x;
  }

  /// Area below threshold t: sum_i deg(i) min{q(i), t}.
  double lower_area(double t) const {
    double y = 0.0;
    for (std::size_t i = 0; i < heights_.size(); ++i) y += widths_[i] * std::min(heights_[i], t);
    return y;
  }

  /// C(d_S, .), the curve of the incoming weights.
  ConcaveCurve curve() const { return ConcaveCurve(widths_, incoming_); }

 private:
  VertexSet set_;
  std::vector<double> incoming_;
  std::vector<double> widths_;
  std::vector<double> heights_;
  std::vector<Vertex> order_;
  double set_volume_ = 0.0;
};

inline IncomingProfile incoming_profile(const WeightedGraph& g, const VertexSet& s) { return IncomingProfile(g, s); }

}  // namespace spexlab

#endif  // SPEXLAB_INCOMING_PROFILE_HPP
