#include "qdkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdkit/error.hpp"

namespace qdkit {

namespace detail {

namespace {

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
  const __uint128_t p = static_cast<__uint128_t>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr,
                                        std::uint64_t key0, std::uint64_t key1) {
  constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0 = 0;
    std::uint64_t hi1 = 0;
    const std::uint64_t lo0 = mulhilo(kMul0, ctr[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, ctr[2], hi1);
    ctr = {hi1 ^ ctr[1] ^ key0, lo1, hi0 ^ ctr[3] ^ key1, lo0};
    key0 += kWeyl0;
    key1 += kWeyl1;
  }
  return ctr;
}

}  // namespace detail

namespace {

// Second counter word selects the domain: 0 for ordinary draws, 1 for the
// ids generated by split_rng. Keeping the domains disjoint guarantees that
// child-id material never reappears in any draw sequence.
constexpr std::uint64_t kDrawDomain = 0;
constexpr std::uint64_t kSplitDomain = 1;

}  // namespace

std::uint64_t RngStream::next_u64() {
  const std::uint64_t block = counter_ >> 2;
  const std::uint64_t word = counter_ & 3;
  ++counter_;
  const auto out = detail::philox4x64({block, kDrawDomain, 0, 0}, seed_, stream_id_);
  return out[word];
}

double RngStream::next_double() {
  // 53 high bits -> [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("uniform_index: n must be >= 1");
  // 53-bit uniform scaled to n; bias is negligible for the index ranges used
  // here (archive cells, batch slots) and keeps the draw at one word.
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(next_double() * static_cast<double>(n)),
                                 n - 1);
}

double RngStream::next_normal() {
  // Box-Muller, cosine branch only. Two words per draw, no carried state.
  const std::uint64_t a = next_u64();
  const std::uint64_t b = next_u64();
  const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;       // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<RngStream> split_rng(const RngStream& stream, std::size_t count) {
  if (count == 0) throw InvalidArgument("split_rng: count must be >= 1");
  std::vector<RngStream> children;
  children.reserve(count);
  std::array<std::uint64_t, 4> buffer{};
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 4 == 0) {
      buffer = detail::philox4x64({stream.counter_ + i / 4, kSplitDomain, 0, 0},
                                  stream.seed_, stream.stream_id_);
    }
    std::uint64_t id = buffer[i % 4];
    // Sibling ids are PRF output and collide with probability ~2^-64; bump
    // deterministically so distinctness holds unconditionally.
    auto taken = [&](std::uint64_t v) {
      return std::any_of(children.begin(), children.end(),
                         [&](const RngStream& c) { return c.stream_id() == v; });
    };
    while (taken(id)) ++id;
    children.emplace_back(stream.seed_, id, 0);
  }
  return children;
}

}  // namespace qdkit
