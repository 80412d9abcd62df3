#pragma once

#include <cstdint>
#include <random>

namespace swinf {

/// Identifies how Gaussian variates are produced. Written into every output
/// file so results can be traced to the generator that made them.
inline constexpr const char* kGaussianMethod =
    "mt19937_64 substreams; 53-bit open-interval uniforms; inverse normal CDF (Acklam + Halley)";

/// Named substream roles. Every random quantity in the library is drawn from
/// a stream keyed by (seed, role, index...), never from shared state.
enum class StreamRole : std::uint64_t {
  kDirections = 1,
  kGaussianRows = 2,
  kSimulation = 3,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hash-combines a key path into a single 64-bit seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) { return mix64(mix64(seed) ^ a); }

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c) {
  return derive_seed(derive_seed(seed, a, b), c);
}

/// Deterministic random stream. Uniform and Gaussian draws are computed by
/// hand from raw engine output so that values are bit-identical across
/// standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(key) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by inversion.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace swinf
