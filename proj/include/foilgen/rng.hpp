#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace foilgen::rng {

// SplitMix64 generator (Steele, Lea & Flood 2014). Chosen over the standard
// library engines so that the exact bit stream is reproducible from the seed
// alone, independent of any library implementation.
//
// Gaussian draws use the Box-Muller transform with the second variate cached,
// so consecutive calls consume uniforms in pairs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, bound) via Lemire's multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    const auto wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Fisher-Yates shuffle driven by the generator above; the swap order is part
// of the determinism contract of everything built on top.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(gen.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace foilgen::rng
