#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lcp {

// xorshift64* generator. The state is initialised from the seed through one
// splitmix64 step so that small or zero seeds still give a nonzero state.
// Everything here is defined bit-for-bit so that samples are identical across
// compilers and standard libraries (std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(SplitMix(seed ^ (stream * 0xD1B54A32D192ED03ULL))) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t Next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform integer in [0, bound) by 128-bit multiply; bound must be > 0.
  std::uint64_t Below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(Next()) * bound) >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  static std::uint64_t SplitMix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> ShuffledIndices(std::size_t n, Rng& rng);

// k distinct indices from 0..n-1, returned in ascending order.
std::vector<std::size_t> SampleWithoutReplacement(std::size_t n, std::size_t k, Rng& rng);

}  // namespace lcp
