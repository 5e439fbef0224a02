#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace windings {

/// Root seed plus replica index. Two equal seeds always produce the same
/// stream; streams with different ids share no state.
struct RngSeed {
  std::uint64_t root = 0;
  std::uint64_t stream_id = 0;

  /// Deterministic child seed for a sub-task (suite, alpha, check, ...).
  [[nodiscard]] RngSeed child(std::uint64_t index) const;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// A single random stream. Value type: copying a stream forks it, and
/// replaying a copy replays its outputs.
class RandomStream {
 public:
  explicit RandomStream(const RngSeed& seed);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform_open()); }

  double normal() { return normal_(engine_); }

  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Independent child stream for replica `index` of `seed`.
RandomStream derive_substream(const RngSeed& seed, std::uint64_t index);

}  // namespace windings
