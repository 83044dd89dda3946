#ifndef SPEXLAB_HYPERCUBE_HPP
#define SPEXLAB_HYPERCUBE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/hypercube_model.hpp"
#include "spexlab/rng.hpp"

namespace spexlab {

inline constexpr int kWeightChainLimit = 10000;
/// Binomial laws of larger order are evaluated in log space.
inline constexpr int kLogSpaceThreshold = 500;
inline constexpr std::uint64_t kPairwiseLevelLimit = 4096;

/// Binomial(m, p) pmf. The direct path runs the multiplicative recurrence
/// from (1-p)^m; the log path uses lgamma and never underflows before exp.
inline std::vector<double> binomial_pmf(int m, double p, bool log_space) {
  std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
  if (p <= 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (p >= 1.0) {
    out[m] = 1.0;
    return out;
  }
  const double start_log = m * std::log1p(-p);
  if (!log_space && start_log > -700.0) {
    double v = std::exp(start_log);
    const double ratio = p / (1.0 - p);
    for (int j = 0; j <= m; ++j) {
      out[j] = v;
      v *= ratio * (m - j) / (j + 1.0);
    }
    return out;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lm = std::lgamma(m + 1.0);
  for (int j = 0; j <= m; ++j) {
    out[j] = std::exp(lm - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0) + j * lp + (m - j) * lq);
  }
  return out;
}

inline std::vector<double> binomial_pmf(int m, double p) { return binomial_pmf(m, p, m > kLogSpaceThreshold); }

/// log of the Binomial(m, p) pmf (p strictly inside (0,1)), or -inf entries
/// at the degenerate ends.
inline std::vector<double> binomial_log_pmf(int m, double p) {
  std::vector<double> out(static_cast<std::size_t>(m) + 1, -std::numeric_limits<double>::infinity());
  if (p <= 0.0) {
    out[0] = 0.0;
    return out;
  }
  if (p >= 1.0) {
    out[m] = 0.0;
    return out;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lm = std::lgamma(m + 1.0);
  for (int j = 0; j <= m; ++j) out[j] = lm - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0) + j * lp + (m - j) * lq;
  return out;
}

/// Law of the Hamming weight after one step, given the current weight.
///
/// By symmetry w(x, B) for any union B of weight classes depends on x only
/// through |x|, so the walk projects exactly onto this (d+1)-state chain.
/// P(a, .) is the law of (a - Z) + W with Z ~ Bin(a, eps/k) and
/// W ~ Bin(d - a, eps (k-1)/k).
class WeightChainKernel {
 public:
  explicit WeightChainKernel(const HypercubeModel& m) : d_(m.d()) {
    if (m.d() > kWeightChainLimit) {
      throw CapacityError("weight chain stores (d+1)^2 entries; d must be <= " + std::to_string(kWeightChainLimit));
    }
    const int d = d_;
    const auto stride = static_cast<std::size_t>(d) + 1;
    p_.assign(stride * stride, 0.0);
    for (int a = 0; a <= d; ++a) {
      const auto lose = binomial_pmf(a, m.p_to_zero());
      const auto gain = binomial_pmf(d - a, m.p_from_zero());
      double* row = &p_[static_cast<std::size_t>(a) * stride];
      for (int z = 0; z <= a; ++z) {
        if (lose[z] == 0.0) continue;
        for (int w = 0; w <= d - a; ++w) {
          if (gain[w] == 0.0) continue;
          row[a - z + w] += lose[z] * gain[w];
        }
      }
    }
    log_pi_ = binomial_log_pmf(d, (m.k() - 1.0) / m.k());
    pi_.resize(log_pi_.size());
    for (std::size_t a = 0; a < pi_.size(); ++a) pi_[a] = std::exp(log_pi_[a]);
  }

  int d() const noexcept { return d_; }
  double operator()(int a, int b) const { return p_[static_cast<std::size_t>(a) * (d_ + 1) + b]; }
  std::span<const double> row(int a) const {
    return {p_.data() + static_cast<std::size_t>(a) * (d_ + 1), static_cast<std::size_t>(d_) + 1};
  }

  /// pi(a) = Bin(d, (k-1)/k) at a: the fraction of strings of weight a.
  std::span<const double> stationary() const noexcept { return pi_; }
  std::span<const double> log_stationary() const noexcept { return log_pi_; }

  double max_row_error() const {
    double worst = 0.0;
    for (int a = 0; a <= d_; ++a) {
      double s = 0.0;
      for (double v : row(a)) s += v;
      worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
  }

  /// max |pi(a) P(a,b) - pi(b) P(b,a)|.
  double max_reversibility_error() const {
    double worst = 0.0;
    for (int a = 0; a <= d_; ++a) {
      for (int b = a + 1; b <= d_; ++b) {
        worst = std::max(worst, std::abs(pi_[a] * (*this)(a, b) - pi_[b] * (*this)(b, a)));
      }
    }
    return worst;
  }

  /// max_b |(pi^T P)(b) - pi(b)|.
  double max_stationarity_error() const {
    double worst = 0.0;
    for (int b = 0; b <= d_; ++b) {
      double s = 0.0;
      for (int a = 0; a <= d_; ++a) s += pi_[a] * (*this)(a, b);
      worst = std::max(worst, std::abs(s - pi_[b]));
    }
    return worst;
  }

 private:
  int d_;
  std::vector<double> p_;
  std::vector<double> pi_;
  std::vector<double> log_pi_;
};

inline WeightChainKernel weight_chain(const HypercubeModel& m) { return WeightChainKernel(m); }

/// The Hamming ball B(r) seen through the weight chain.
struct BallProfile {
  int r = 0;
  double size_fraction = 0.0;
  double log_size_fraction = 0.0;
  std::vector<double> stay_weight;  // w_s = w(x, B(r)) for |x| = s
  double expansion = 0.0;
};

inline BallProfile ball_profile(const WeightChainKernel& kernel, int r) {
  const int d = kernel.d();
  if (r < 0 || r > d) throw DomainError("ball radius must lie in [0, d]");
  BallProfile b;
  b.r = r;
  b.stay_weight.resize(static_cast<std::size_t>(d) + 1);
  for (int s = 0; s <= d; ++s) {
    double w = 0.0;
    for (int t = 0; t <= r; ++t) w += kernel(s, t);
    b.stay_weight[s] = std::min(w, 1.0);
  }
  const auto lpi = kernel.log_stationary();
  const double top = *std::max_element(lpi.begin(), lpi.begin() + r + 1);
  double mass = 0.0;
  double inner = 0.0;
  for (int a = 0; a <= r; ++a) {
    const double scaled = std::exp(lpi[a] - top);
    mass += scaled;
    inner += scaled * b.stay_weight[a];
  }
  b.log_size_fraction = top + std::log(mass);
  b.size_fraction = std::exp(b.log_size_fraction);
  b.expansion = std::clamp(1.0 - inner / mass, 0.0, 1.0);
  return b;
}

inline BallProfile ball_profile(const HypercubeModel& m, int r) { return ball_profile(WeightChainKernel(m), r); }

struct CoordinateCut {
  double size_fraction = 0.0;
  double expansion = 0.0;
  bool within_eps = true;
};

/// S = {x : x_1 = 0}: size fraction 1/k, expansion 1 - p_same = eps (k-1)/k.
inline CoordinateCut coordinate_cut_expansion(const HypercubeModel& m) {
  const double phi = 1.0 - m.p_same();
  return {1.0 / m.k(), phi, phi <= m.eps() + 1e-15};
}

struct LevelCheck {
  bool monotone = true;
  bool matches_kernel = true;
  double max_violation = 0.0;     // max over |x| <= |y| of w(y, B) - w(x, B)
  double max_kernel_error = 0.0;  // max |w(x, B) - w_{|x|}|
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
  bool passed() const noexcept { return monotone && matches_kernel; }
};

/// w(x, B(r)) for every explicit string x, computed without the weight chain:
/// by literal pairwise sums on small instances and by a per-string count
/// recursion over coordinates otherwise.
inline std::vector<double> explicit_ball_weights(const HypercubeModel& m, int r) {
  const std::uint64_t n = m.explicit_size();
  if (n == 0) {
    throw CapacityError("explicit hypercube check needs k^d <= " + std::to_string(kExplicitHypercubeLimit));
  }
  if (r < 0 || r > m.d()) throw DomainError("ball radius must lie in [0, d]");
  std::vector<double> out(n, 0.0);
  if (n <= kPairwiseLevelLimit) {
    std::vector<std::vector<int>> strings;
    strings.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) strings.push_back(m.decode(i));
    for (std::uint64_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::uint64_t j = 0; j < n; ++j) {
        if (hamming_weight(strings[j]) <= r) s += pair_weight(m, strings[i], strings[j]);
      }
      out[i] = s;
    }
    return out;
  }
  const double to_zero_same = m.p_same();       // x_i = 0 stays 0
  const double to_zero_other = m.p_diff();      // x_i != 0 becomes 0
  std::vector<double> count(static_cast<std::size_t>(m.d()) + 1);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto x = m.decode(i);
    std::fill(count.begin(), count.end(), 0.0);
    count[0] = 1.0;
    for (int c = 0; c < m.d(); ++c) {
      const double z = x[c] == 0 ? to_zero_same : to_zero_other;
      for (int j = std::min(c + 1, r); j >= 0; --j) count[j] = count[j] * z + (j > 0 ? count[j - 1] * (1.0 - z) : 0.0);
    }
    double s = 0.0;
    for (int j = 0; j <= r; ++j) s += count[j];
    out[i] = s;
  }
  return out;
}

/// Verifies |x| <= |y| implies w(x, B(r)) >= w(y, B(r)) on an explicit
/// instance, and that w(x, B(r)) matches the weight chain's w_{|x|}.
inline LevelCheck level_monotonicity_check(const HypercubeModel& m, int r, double tol = 1e-12) {
  const auto weights = explicit_ball_weights(m, r);
  const auto prof = ball_profile(m, r);
  const int d = m.d();
  std::vector<double> lo(static_cast<std::size_t>(d) + 1, std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(d) + 1, -std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> lo_at(lo.size(), 0);
  std::vector<std::uint64_t> hi_at(hi.size(), 0);
  LevelCheck out;
  for (std::uint64_t i = 0; i < weights.size(); ++i) {
    const int a = hamming_weight(m.decode(i));
    if (weights[i] < lo[a]) {
      lo[a] = weights[i];
      lo_at[a] = i;
    }
    if (weights[i] > hi[a]) {
      hi[a] = weights[i];
      hi_at[a] = i;
    }
    out.max_kernel_error = std::max(out.max_kernel_error, std::abs(weights[i] - prof.stay_weight[a]));
  }
  // pairs with |x| <= |y| reduce to class extrema: min over class a against max over class b >= a
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (int a = 0; a <= d; ++a) {
    for (int b = a; b <= d; ++b) {
      const double v = hi[b] - lo[a];
      if (v > out.max_violation) {
        out.max_violation = v;
        out.witness = std::pair{lo_at[a], hi_at[b]};
      }
    }
  }
  out.monotone = out.max_violation <= tol;
  out.matches_kernel = out.max_kernel_error <= tol;
  if (out.monotone) out.witness.reset();
  return out;
}

/// Law of the next radius from B(r): index s + 1 holds P(r' = s) for
/// s = -1..d, where r' = max{s : w_s >= U} and r' = -1 encodes the empty set.
inline std::vector<double> ball_chain_transition(const BallProfile& ball) {
  const int d = static_cast<int>(ball.stay_weight.size()) - 1;
  std::vector<double> out(static_cast<std::size_t>(d) + 2, 0.0);
  for (int s = -1; s <= d; ++s) {
    const double upper = s < 0 ? 1.0 : ball.stay_weight[s];
    const double lower = s < d ? ball.stay_weight[s + 1] : 0.0;
    out[s + 1] = std::max(0.0, upper - lower);
  }
  return out;
}

inline constexpr int kEmptyRadius = -1;

/// B(r) as an explicit vertex set (vertex index encodes the string in base k).
inline VertexSet explicit_ball(const HypercubeModel& m, int r) {
  const std::uint64_t n = m.explicit_size();
  if (n == 0 || n > static_cast<std::uint64_t>(std::numeric_limits<Vertex>::max())) {
    throw CapacityError("explicit ball needs k^d <= " + std::to_string(kExplicitHypercubeLimit));
  }
  return VertexSet::where(static_cast<int>(n), [&](Vertex x) { return hamming_weight(m.decode(x)) <= r; });
}

/// Radius r with s = B(r), -1 for the empty set, or empty when s is not a ball.
inline std::optional<int> ball_radius(const HypercubeModel& m, const VertexSet& s) {
  if (s.empty()) return kEmptyRadius;
  int r = 0;
  for (Vertex x : s.members()) r = std::max(r, hamming_weight(m.decode(static_cast<std::uint64_t>(x))));
  if (explicit_ball(m, r) == s) return r;
  return std::nullopt;
}

struct BallStep {
  int t = 0;
  int r = 0;
  double size_fraction = 0.0;
  double expansion = 0.0;
  std::optional<double> u;
  std::optional<int> walker_weight;
};

/// The evolving set process restricted to Hamming balls. Radius -1 is the
/// empty set and radius d is V; both absorb.
class BallProcess {
 public:
  explicit BallProcess(const HypercubeModel& m) : model_(m), kernel_(m) {
    if (!m.monotone_regime()) throw DomainError("ESP on balls needs eps <= 1/2 so successors stay balls");
  }

  const WeightChainKernel& kernel() const noexcept { return kernel_; }

  const BallProfile& ball(int r) {
    auto it = cache_.find(r);
    if (it == cache_.end()) it = cache_.emplace(r, ball_profile(kernel_, r)).first;
    return it->second;
  }

  int successor(int r, double u) {
    if (r == kEmptyRadius || r == kernel_.d()) return r;
    const auto& w = ball(r).stay_weight;
    int next = kEmptyRadius;
    for (int s = 0; s <= kernel_.d(); ++s) {
      if (w[s] >= u) next = s;
    }
    return next;
  }

  /// One step of the volume-biased process: walker weight a -> a' ~ P(a, .),
  /// then U ~ (0, w_{a'}] so the walker stays inside the successor.
  std::pair<int, int> vb_successor(int r, int a, Rng& rng, double& u) {
    if (r == kEmptyRadius || r == kernel_.d()) {
      u = 1.0;
      return {r, a};
    }
    const auto row = kernel_.row(a);
    double x = rng.uniform01();
    int next_a = kernel_.d();
    for (int b = 0; b <= kernel_.d(); ++b) {
      x -= row[b];
      if (x < 0.0) {
        next_a = b;
        break;
      }
    }
    const double cap = ball(r).stay_weight[next_a];
    u = rng.uniform_open_closed() * cap;
    return {successor(r, u), next_a};
  }

  std::vector<BallStep> run(int steps, Rng& rng, bool volume_biased = false, int start_r = 0) {
    if (steps < 0) throw DomainError("ESP on balls needs steps >= 0");
    std::vector<BallStep> traj;
    int r = start_r;
    int a = 0;
    traj.push_back(record(0, r, std::nullopt, volume_biased ? std::optional<int>{a} : std::nullopt));
    for (int t = 1; t <= steps; ++t) {
      double u = 0.0;
      if (volume_biased) {
        std::tie(r, a) = vb_successor(r, a, rng, u);
      } else {
        u = rng.uniform_open_closed();
        r = successor(r, u);
      }
      traj.push_back(record(t, r, u, volume_biased ? std::optional<int>{a} : std::nullopt));
    }
    return traj;
  }

 private:
  BallStep record(int t, int r, std::optional<double> u, std::optional<int> a) {
    BallStep s{t, r, 0.0, 0.0, u, a};
    if (r == kEmptyRadius) {
      s.size_fraction = 0.0;
      s.expansion = 0.0;
    } else {
      const auto& b = ball(r);
      s.size_fraction = b.size_fraction;
      s.expansion = b.expansion;
    }
    return s;
  }

  HypercubeModel model_;
  WeightChainKernel kernel_;
  std::map<int, BallProfile> cache_;
};

inline std::vector<BallStep> esp_on_balls(const HypercubeModel& m, int steps, Rng& rng, bool volume_biased = false) {
  BallProcess proc(m);
  return proc.run(steps, rng, volume_biased);
}

struct BallRow {
  int r = 0;
  double size_fraction = 0.0;
  double expansion = 0.0;
};

struct CounterexampleReport {
  int k = 0;
  int d = 0;
  double eps = 0.0;
  double cap = 0.0;
  double threshold = 0.0;
  CoordinateCut coordinate;
  std::vector<BallRow> balls;  // every ball with size fraction <= cap
  std::optional<BallRow> weakest;
  bool vacuous = false;
  bool degenerate = false;  // eps = 0
  bool passed = false;      // weakest ball expansion >= threshold
  /// Largest r (and its size fraction) such that every ball up to it has
  /// expansion >= threshold; absent when even B(0) falls short.
  std::optional<BallRow> certified_prefix;
  std::string reachability;
};

/// Compares the coordinate cut against all Hamming balls within the size cap.
inline CounterexampleReport counterexample_report(const HypercubeModel& m, double cap,
                                                  std::optional<double> threshold = std::nullopt) {
  if (!(cap > 0.0)) throw DomainError("counterexample report needs a positive size cap");
  CounterexampleReport rep;
  rep.k = m.k();
  rep.d = m.d();
  rep.eps = m.eps();
  rep.cap = cap;
  rep.threshold = threshold.value_or(1.0 - m.eps());
  rep.coordinate = coordinate_cut_expansion(m);
  rep.degenerate = m.eps() == 0.0;
  const WeightChainKernel kernel(m);
  bool prefix_ok = true;
  for (int r = 0; r <= m.d(); ++r) {
    const auto b = ball_profile(kernel, r);
    const BallRow row{r, b.size_fraction, b.expansion};
    if (prefix_ok && b.expansion >= rep.threshold) {
      rep.certified_prefix = row;
    } else {
      prefix_ok = false;
    }
    if (b.size_fraction > cap) continue;
    rep.balls.push_back(row);
    if (!rep.weakest || row.expansion < rep.weakest->expansion) rep.weakest = row;
  }
  rep.vacuous = rep.balls.empty();
  rep.passed = !rep.vacuous && rep.weakest->expansion >= rep.threshold;
  rep.reachability = m.monotone_regime()
                         ? "started from a singleton, the evolving set process and the walk level sets only visit "
                           "Hamming balls around it, so no local run reaches the coordinate cut"
                         : "eps > 1/2: ball stay weights need not be monotone, so reachability is not certified";
  return rep;
}

}  // namespace spexlab

#endif  // SPEXLAB_HYPERCUBE_HPP
