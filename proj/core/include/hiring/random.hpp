#pragma once

#include <cstdint>
#include <random>

namespace hiring {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` of a run started from `base`. Independent of how
/// streams are later distributed across workers.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(base) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

/// SplitMix64 stream; cheap to seed, used for one Monte-Carlo replication each.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  constexpr result_type operator()() noexcept {
    const std::uint64_t out = mix_seed(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

 private:
  std::uint64_t state_;
};

/// Uniform draw in [0, 1) from the top 53 bits.
template <typename Gen>
double uniform01(Gen& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Gen>
bool bernoulli(Gen& rng, double p) {
  return uniform01(rng) < p;
}

}  // namespace hiring
