// Copyright 2026 The Semfrag Authors
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

#ifndef SEMFRAG_RNG_HPP_
#define SEMFRAG_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace semfrag {

// Counter-based splittable PRNG.
//
// Every draw is a pure function of (key, counter): draw(i) applies a
// splitmix64-style finalizer to the key xored with a Weyl sequence over the
// counter. No platform-dependent state (no doubles, no std::mt19937
// distribution quirks), so the same seed and call order reproduce
// bit-identical streams everywhere.
//
// split(tag) derives an independent child generator keyed by
// (parent key, FNV-1a hash of tag) without consuming parent state: the same
// (seed, tag) always yields the same child stream, and different tags yield
// unrelated streams.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed);

  // Next raw 64-bit draw.
  uint64_t next_u64();

  // Unbiased integer in [0, n) via rejection sampling. n must be > 0.
  uint64_t below(uint64_t n);

  // Inclusive range [lo, hi].
  int64_t range(int64_t lo, int64_t hi);

  // True with probability num/den (integer arithmetic, no floats).
  bool chance(uint64_t num, uint64_t den);

  // Independent child stream derived from (key, tag). Pure: does not
  // advance this generator.
  RandomSource split(std::string_view tag) const;

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  // Picks an index in [0, weights.size()) proportionally to integer weights.
  size_t pick_weighted(const std::vector<uint32_t>& weights);

  uint64_t key() const { return key_; }

 private:
  RandomSource(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}

  uint64_t key_;
  uint64_t counter_;
};

// splitmix64 finalizer; exposed for tests that freeze the stream definition.
uint64_t mix64(uint64_t x);

// FNV-1a 64-bit over the bytes of s.
uint64_t fnv1a64(std::string_view s);

}  // namespace semfrag

#endif  // SEMFRAG_RNG_HPP_
