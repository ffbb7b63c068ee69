#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace hopcut {

// SplitMix64 step; used to hash seeds so derived streams are decorrelated.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic stream seed for (master, a, b). Campaigns derive one stream
// per work item, e.g. a = run index, b = salt separating anneal draws from
// backend draws, so results do not depend on worker count or scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s ^= (a + 1) * 0xd1b54a32d192ed03ull;
  h ^= splitmix64(s);
  s ^= (b + 1) * 0x8cb92ba72f3d8dd7ull;
  h ^= splitmix64(s);
  return h;
}

// mt19937_64 with explicit draw semantics. The standard distributions are
// implementation defined, which would break bit-for-bit reproducibility of
// campaign outputs across toolchains; all draws used by the library go
// through this wrapper instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform on [0, 1), 53-bit resolution
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // uniform on [-amplitude, +amplitude]
  double symmetric(double amplitude) { return amplitude * (2.0 * unit() - 1.0); }

  // Marsaglia polar method, spare value cached
  double gaussian(double mean, double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sigma * spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * unit() - 1.0;
      v = 2.0 * unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return mean + sigma * u * m;
  }

  // uniform integer in [0, n), n > 0; multiply-shift, no modulo bias to speak of
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  double spin() { return (next() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Fisher-Yates, driven by Rng::index for stable draw order.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.index(i)]);
  }
}

}  // namespace hopcut
