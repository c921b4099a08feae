#pragma once

#include <array>
#include <cstdint>

namespace hoopstat::numerics {

/// Counter-based random stream (Philox4x32-10).
///
/// Draw i of stream (seed, stream_index) is a pure function of those three
/// values, so distinct stream indices never overlap and a Monte-Carlo run
/// partitioned across workers by stream index reproduces the sequential
/// result bit for bit.  A stream is single-owner; share seeds, not streams.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t draws() const noexcept { return ordinal_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform();
  /// Uniform integer on [0, k), unbiased (Lemire's multiply-and-reject).
  /// Throws DomainError when k == 0.
  std::uint64_t next_choice(std::uint64_t k);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t ordinal_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
};

/// One Philox4x32-10 block; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

}  // namespace hoopstat::numerics
