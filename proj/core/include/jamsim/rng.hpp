#pragma once

#include <cstdint>
#include <random>

namespace jamsim {

using Rng = std::mt19937_64;

// SplitMix64 mixing step. Used to derive well-separated seeds from small keys.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: the generator state is a pure function of
// (base_seed, stream, substream), so replicate i of an experiment can be
// reproduced in isolation and replicates never share a stream.
inline Rng make_rng(std::uint64_t base_seed, std::uint64_t stream, std::uint64_t substream = 0) {
  std::uint64_t key = splitmix64(splitmix64(splitmix64(base_seed) ^ stream) ^ substream);
  std::uint64_t words[4];
  for (auto& w : words) {
    key = splitmix64(key);
    w = key;
  }
  std::seed_seq seq{
      static_cast<std::uint32_t>(words[0]), static_cast<std::uint32_t>(words[0] >> 32),
      static_cast<std::uint32_t>(words[1]), static_cast<std::uint32_t>(words[1] >> 32),
      static_cast<std::uint32_t>(words[2]), static_cast<std::uint32_t>(words[2] >> 32),
      static_cast<std::uint32_t>(words[3]), static_cast<std::uint32_t>(words[3] >> 32)};
  return Rng(seq);
}

// Exact Binomial(n, p) sampler. CDF inversion is O(np) expected, which fits the
// sparse regime p = c/N used throughout; the mirrored case keeps np <= n/2 and a
// Bernoulli sweep covers the rare mid-p cases where the inversion walk gets long.
std::int64_t sample_binomial(std::int64_t n, double p, Rng& rng);

}  // namespace jamsim
