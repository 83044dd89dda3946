#ifndef SPEXLAB_RNG_HPP
#define SPEXLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace spexlab {

// SplitMix64 finalizer; used to derive independent child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded generator with platform-independent uniform draws.
///
/// std::uniform_real_distribution is implementation defined, so draws are
/// built directly from the 64-bit engine output to keep trajectories
/// bit-exact across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Child generator for stream `index`; independent of the parent's state.
  Rng split(std::uint64_t index) const {
    return Rng(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
  }

  /// Uniform on (0, 1].
  double uniform_open_closed() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    // reject the tail so the modulus is unbiased
    const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Standard exponential, by inversion.
  double exponential() { return -std::log(uniform_open_closed()); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace spexlab

#endif  // SPEXLAB_RNG_HPP
