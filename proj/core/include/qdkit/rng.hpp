#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qdkit {

namespace detail {

/// Philox4x64-10 block function (Salmon et al., SC'11). Maps a 256-bit
/// counter block to 256 bits of output under a 128-bit key. Verified against
/// the reference implementation; see rng_test.cpp for the frozen vectors.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::uint64_t key0, std::uint64_t key1);

}  // namespace detail

/// Counter-based random stream. The n-th draw is a pure function of
/// (seed, stream_id, n), so streams can be copied, replayed, and handed to
/// workers without any draw depending on scheduling order. Splitting derives
/// child streams from a counter domain disjoint from the draw domain, so a
/// split never perturbs the parent's sequence.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0)
      : seed_(seed), stream_id_(stream_id), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  /// Next raw 64-bit word; advances the counter by one.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n). Requires n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal draw via Box-Muller. Consumes exactly two words, so the
  /// stream state stays a pure function of the number of calls.
  double next_normal();

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;

  friend std::vector<RngStream> split_rng(const RngStream&, std::size_t);
};

/// Derives `count` child streams from `stream` without advancing it.
/// Children have pairwise-distinct stream ids and start at counter 0. The
/// derivation is a pure function of the stream state, so splitting the same
/// state twice yields identical children.
std::vector<RngStream> split_rng(const RngStream& stream, std::size_t count);

}  // namespace qdkit
