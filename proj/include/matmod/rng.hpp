#pragma once

#include <cstdint>
#include <random>

namespace matmod {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Stateless bijective mix.
std::uint64_t mix64(std::uint64_t x);

// Engine key for stream `stream` of seed `seed`:
//   key = mix64(seed + (stream + 1) * 0x9e3779b97f4a7c15)
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream);

// Reproducible random stream with a documented algorithm identity:
// std::mt19937_64 (algorithm fixed by the C++ standard) seeded with
// stream_key(seed, stream); uniforms take the top 53 bits of each output;
// normal deviates use the Box-Muller transform with pair caching.
//
// The integer stream is bit-exact across platforms. Floating-point deviates
// are deterministic on a given platform; across platforms they may differ in
// the last ulp through libm.
//
// Streams of one seed are independent for Monte Carlo purposes: use one
// stream per replicate so results do not depend on execution order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(stream_key(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // (0, 1], safe as a log() argument
  double uniform_open() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace matmod
