#include "windings/rng.hpp"

#include <cmath>

namespace windings {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 seeded_engine(const RngSeed& seed) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed.root), hi(seed.root), lo(seed.stream_id), hi(seed.stream_id)};
  return std::mt19937_64(seq);
}

}  // namespace

RngSeed RngSeed::child(std::uint64_t index) const {
  return RngSeed{root, splitmix64(splitmix64(stream_id) ^ (index + 0x632be59bd9b4e019ULL))};
}

RandomStream::RandomStream(const RngSeed& seed) : engine_(seeded_engine(seed)) {}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

RandomStream derive_substream(const RngSeed& seed, std::uint64_t index) {
  return RandomStream(seed.child(index));
}

}  // namespace windings
