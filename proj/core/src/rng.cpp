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

#include "semfrag/rng.hpp"

#include <cassert>

#include "semfrag/errors.hpp"

namespace semfrag {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kSplitSalt = 0x632BE59BD9B4E019ULL;
}  // namespace

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RandomSource::RandomSource(uint64_t seed)
    : key_(mix64(seed + kGolden)), counter_(0) {}

uint64_t RandomSource::next_u64() {
  counter_ += 1;
  return mix64(key_ ^ (counter_ * kGolden));
}

uint64_t RandomSource::below(uint64_t n) {
  if (n == 0) throw Error("RandomSource::below: n must be positive");
  if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
  // Rejection sampling: accept draws >= 2^64 mod n so every residue is
  // equally likely.
  const uint64_t threshold = (0 - n) % n;
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

int64_t RandomSource::range(int64_t lo, int64_t hi) {
  if (lo > hi) throw Error("RandomSource::range: lo > hi");
  return lo + static_cast<int64_t>(
                  below(static_cast<uint64_t>(hi - lo) + 1));
}

bool RandomSource::chance(uint64_t num, uint64_t den) {
  if (den == 0) throw Error("RandomSource::chance: zero denominator");
  if (num >= den) return true;
  return below(den) < num;
}

RandomSource RandomSource::split(std::string_view tag) const {
  uint64_t child = mix64(key_ ^ mix64(fnv1a64(tag) ^ kSplitSalt));
  return RandomSource(child, 0);
}

size_t RandomSource::pick_weighted(const std::vector<uint32_t>& weights) {
  uint64_t total = 0;
  for (uint32_t w : weights) total += w;
  if (total == 0) throw Error("RandomSource::pick_weighted: all weights zero");
  uint64_t r = below(total);
  for (size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  assert(false);
  return weights.size() - 1;
}

}  // namespace semfrag
