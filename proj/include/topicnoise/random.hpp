#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace topicnoise {

/// Seeded random source used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not portable across library
/// implementations, so all derived draws are defined here:
///   - uniform01(): top 53 bits of one engine output, scaled by 2^-53.
///   - below(n):    Lemire's multiply-shift with rejection (unbiased).
/// Seeds supplied by callers go through SplitMix64 before seeding the engine,
/// so nearby integer seeds give unrelated streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform01();

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);

  /// Index drawn with probability proportional to weights[i], given the
  /// inclusive prefix sums of non-negative integer weights.
  std::size_t weighted_index(std::span<const std::uint64_t> cumulative);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Combines a sequence of integers into one seed; order-sensitive.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// 64-bit FNV-1a, used to turn labels into seed components.
std::uint64_t fnv1a(std::string_view text);

}  // namespace topicnoise
