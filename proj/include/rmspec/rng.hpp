#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rmspec {

/// Master seed used whenever none is given.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED'2006'0001ull;

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure: output depends only on (key, counter).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent child seed, e.g. per word or per replicate.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

/// Two 64-bit words at position `index` of stream `stream` under `seed`.
std::array<std::uint64_t, 2> random_block(std::uint64_t seed,
                                          std::uint64_t stream,
                                          std::uint64_t index);

/// Maps 64 random bits to the open interval (0, 1) on a 2^-52 grid.
inline double bits_to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Standard normal quantile.
double normal_quantile(double u);

/// Sequential generator over one (seed, stream) pair; models
/// UniformRandomBitGenerator. Output i is word (i % 2) of block i / 2.
class CounterEngine {
public:
  using result_type = std::uint64_t;

  CounterEngine(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  double uniform() { return bits_to_open_unit((*this)()); }

  std::uint64_t position() const noexcept { return position_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 2> block_{};
};

}  // namespace rmspec
