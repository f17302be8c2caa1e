#pragma once

#include <cstdint>
#include <random>

namespace tailcens {

// Seeded uniform stream. The 64-bit Mersenne Twister output sequence is fixed
// by the standard and the conversion to (0,1) is done here, so draws are
// reproducible across standard library implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1), resolution 2^-53.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of replicate `index` under master `seed`. Depends only on the pair, so
// replicates can be scheduled in any order or count.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace tailcens
