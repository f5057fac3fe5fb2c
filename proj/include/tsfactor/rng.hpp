#pragma once

#include <cstdint>
#include <random>

namespace tsfactor {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an independent stream `stream` derived from `base`.
///
///   derive_seed(base, stream) = splitmix64(splitmix64(base) ^ (stream * 0x9E3779B97F4A7C15 + 1))
///
/// Replication r of an experiment uses derive_seed(seed, r); row i of a noise
/// matrix uses derive_seed(noise_seed, i).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Reproducible generator. The engine (mt19937_64) is fully specified by the
/// standard; the uniform and normal transforms are implemented here because
/// the std distributions are implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_left() { return 1.0 - uniform(); }
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace tsfactor
