// Copyright 2026 The tgraphon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TGRAPHON_RNG_HPP
#define TGRAPHON_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

/**
 * \file
 * \brief Counter-based random streams (Philox-4x32-10).
 *
 * A stream is a pure function of (key, counter), so the draws of edge (i, j)
 * are the same no matter which thread simulates it or in what order.
 */

namespace tgraphon {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Ten-round Philox-4x32 bijection of the 128-bit counter under a 64-bit key.
constexpr PhiloxBlock philox4x32(PhiloxBlock ctr, PhiloxKey key) {
  constexpr std::uint32_t kMulA = 0xD2511F53;
  constexpr std::uint32_t kMulB = 0xCD9E8D57;
  constexpr std::uint32_t kWeylA = 0x9E3779B9;
  constexpr std::uint32_t kWeylB = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMulA} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMulB} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

/// SplitMix64 finalizer; used to derive child seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of replication `index` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Draw purposes, kept in separate counter sub-spaces.
enum class StreamPurpose : std::uint32_t { path = 0, initial_state = 1, auxiliary = 2 };

/// Uniform and exponential variates for one (seed, i, j, purpose) stream.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t i, std::uint32_t j, StreamPurpose purpose = StreamPurpose::path)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        i_(i),
        j_(j),
        purpose_(static_cast<std::uint32_t>(purpose)) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    if (cursor_ == 2) {
      refill();
    }
    const std::uint64_t hi = buffer_[2 * cursor_];
    const std::uint64_t lo = buffer_[2 * cursor_ + 1];
    ++cursor_;
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Exp(1) variate by inversion.
  double exponential() { return -std::log(uniform()); }

  [[nodiscard]] std::uint64_t blocks_used() const { return block_; }

 private:
  void refill() {
    // Counter words: block index (64 bits split over words 0 and 1 with the
    // purpose tag in the top byte), then the edge coordinates.
    const PhiloxBlock ctr{static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32) ^ (purpose_ << 24), i_, j_};
    buffer_ = philox4x32(ctr, key_);
    ++block_;
    cursor_ = 0;
  }

  PhiloxKey key_;
  std::uint32_t i_;
  std::uint32_t j_;
  std::uint32_t purpose_;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  int cursor_ = 2;
};

}  // namespace tgraphon

#endif
