#ifndef SPEXLAB_TESTS_ORACLES_HPP
#define SPEXLAB_TESTS_ORACLES_HPP

// Slow reference computations used to cross-check the library. Everything
// here works on dense matrices and plain subset enumeration.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "spexlab/graph.hpp"
#include "spexlab/hypercube_model.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix dense(const spexlab::WeightedGraph& g) {
  const int n = g.size();
  Matrix w(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = g.weight(i, j);
  return w;
}

inline std::vector<double> degrees(const Matrix& w) {
  std::vector<double> d(w.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (double x : w[i]) d[i] += x;
  return d;
}

inline bool in(std::uint64_t mask, int i) { return (mask >> i) & 1U; }

inline double weight(const Matrix& w, std::uint64_t s, std::uint64_t t) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (in(s, i) && in(t, j)) total += w[i][j];
  return total;
}

inline double vol(const Matrix& w, std::uint64_t s) {
  const auto d = degrees(w);
  double v = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (in(s, i)) v += d[i];
  return v;
}

inline double phi(const Matrix& w, std::uint64_t s) {
  const double v = vol(w, s);
  return (v - weight(w, s, s)) / v;
}

/// min phi(S) over nonempty S with vol(S) <= delta vol(V).
inline double small_set_expansion(const Matrix& w, double delta) {
  const int n = static_cast<int>(w.size());
  const double total = vol(w, (std::uint64_t{1} << n) - 1);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    if (vol(w, s) > delta * total + 1e-9) continue;
    best = std::min(best, phi(w, s));
  }
  return best;
}

/// min over |S| = |T| <= cap of 1 - w(S,T)/|S|, enumerating both sets.
inline double comb_gap(const Matrix& w, int cap) {
  const int n = static_cast<int>(w.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    const int k = std::popcount(s);
    if (k > cap) continue;
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << n); ++t) {
      if (std::popcount(t) != k) continue;
      best = std::min(best, 1.0 - weight(w, s, t) / k);
    }
  }
  return best;
}

inline double comb_gap(const Matrix& w) { return comb_gap(w, static_cast<int>(w.size()) / 2); }

/// C(p, x) at integer x on a unit-regular graph: best p-mass of x vertices.
inline double curve_at(const std::vector<double>& p, int x) {
  const int n = static_cast<int>(p.size());
  double best = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (std::popcount(s) != x) continue;
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      if (in(s, i)) m += p[i];
    best = std::max(best, m);
  }
  return best;
}

/// One step p -> A p with A = D^-1 W applied to masses (row vector p W D^-1).
inline std::vector<double> step(const Matrix& w, const std::vector<double>& p) {
  const auto d = degrees(w);
  std::vector<double> q(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) q[j] += p[i] * w[i][j] / d[i];
  return q;
}

/// First t with max over singletons of |A^t e_v - 1/n|_1 <= 1/4, or -1.
inline int mixing_time(const Matrix& w, int cap) {
  const int n = static_cast<int>(w.size());
  std::vector<std::vector<double>> ps(n, std::vector<double>(n, 0.0));
  for (int v = 0; v < n; ++v) ps[v][v] = 1.0;
  for (int t = 0; t <= cap; ++t) {
    double worst = 0.0;
    for (const auto& p : ps) {
      double l1 = 0.0;
      for (double x : p) l1 += std::abs(x - 1.0 / n);
      worst = std::max(worst, l1);
    }
    if (worst <= 0.25) return t;
    for (auto& p : ps) p = step(w, p);
  }
  return -1;
}

/// psi(S) = 1 - E sqrt(vol(S~)/vol(S)) by numerical integration over U with
/// the midpoint rule on each interval between distinct thresholds.
inline double gauge(const Matrix& w, std::uint64_t s) {
  const int n = static_cast<int>(w.size());
  const auto d = degrees(w);
  std::vector<double> q(n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (in(s, x)) q[y] += w[y][x] / d[y];
  std::vector<double> cuts = {0.0, 1.0};
  for (double v : q)
    if (v > 0.0 && v < 1.0) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end());
  const double v0 = vol(w, s);
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    const double u = 0.5 * (lo + hi);
    double v = 0.0;
    for (int y = 0; y < n; ++y)
      if (q[y] >= u) v += d[y];
    e += (hi - lo) * std::sqrt(v / v0);
  }
  return 1.0 - e;
}

/// Probability of each successor mask under the evolving set step from S.
inline std::vector<std::pair<std::uint64_t, double>> esp_law(const Matrix& w, std::uint64_t s) {
  const int n = static_cast<int>(w.size());
  const auto d = degrees(w);
  std::vector<double> q(n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (in(s, x)) q[y] += w[y][x] / d[y];
  std::vector<double> cuts = {0.0, 1.0};
  for (double v : q)
    if (v > 0.0 && v < 1.0) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<std::uint64_t, double>> law;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    const double u = 0.5 * (lo + hi);
    std::uint64_t next = 0;
    for (int y = 0; y < n; ++y)
      if (q[y] >= u) next |= std::uint64_t{1} << y;
    auto it = std::find_if(law.begin(), law.end(), [&](const auto& e) { return e.first == next; });
    if (it == law.end()) law.push_back({next, hi - lo});
    else it->second += hi - lo;
  }
  return law;
}

/// Probability that one noisy step moves string x to string y.
inline double cube_weight(const spexlab::HypercubeModel& m, const std::vector<int>& x, const std::vector<int>& y) {
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    p *= x[i] == y[i] ? (1.0 - m.eps()) + m.eps() / m.k() : m.eps() / m.k();
  return p;
}

inline std::vector<int> digits(std::uint64_t v, int k, int d) {
  std::vector<int> out(d);
  for (int i = 0; i < d; ++i) {
    out[i] = static_cast<int>(v % k);
    v /= k;
  }
  return out;
}

inline int nonzero(const std::vector<int>& x) {
  return static_cast<int>(std::count_if(x.begin(), x.end(), [](int c) { return c != 0; }));
}

/// w(x, B(r)) for each string, and expansion of B(r), by pairwise sums.
struct CubeBall {
  std::vector<double> stay;
  double size_fraction = 0.0;
  double expansion = 0.0;
};

inline CubeBall cube_ball(const spexlab::HypercubeModel& m, int r) {
  const std::uint64_t n = m.explicit_size();
  std::vector<std::vector<int>> xs;
  for (std::uint64_t v = 0; v < n; ++v) xs.push_back(digits(v, m.k(), m.d()));
  CubeBall b;
  b.stay.assign(n, 0.0);
  double inner = 0.0;
  double size = 0.0;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y)
      if (nonzero(xs[y]) <= r) b.stay[x] += cube_weight(m, xs[x], xs[y]);
    if (nonzero(xs[x]) <= r) {
      size += 1.0;
      inner += b.stay[x];
    }
  }
  b.size_fraction = size / static_cast<double>(n);
  b.expansion = (size - inner) / size;
  return b;
}

}  // namespace oracle

#endif  // SPEXLAB_TESTS_ORACLES_HPP
