// Copyright 2026 The whbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace whbench {

/// 64-bit FNV-1a, used for sub-stream keys and schema fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);

/// Seeded xoshiro256** stream. The state is expanded from the seed with
/// splitmix64, so a seed fully determines the sequence on every platform.
/// Single owner: not safe to share between threads.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Independent stream keyed by (master seed, name); tables draw from their
  /// own sub-stream so generation order does not affect content.
  static RandomSource substream(std::uint64_t master_seed, std::string_view name);

  /// Raw xoshiro256** state, for checking against the reference vectors.
  static RandomSource from_state(const std::array<std::uint64_t, 4>& state);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit();
  /// Uniform in [lo, hi). Consumes exactly one draw. Throws on lo >= hi.
  double uniform_float(double lo, double hi);
  /// Uniform integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double standard_normal();
  double normal(double mean, double sigma);

 private:
  RandomSource() = default;

  std::uint64_t seed_ = 0;
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_normal_;
};

/// Normal(mean, spread_ratio * mean) rounded to the nearest integer and
/// clamped to >= 1.
std::int64_t gaussian_int(RandomSource& source, double mean, double spread_ratio);

/// Normal(mean, spread_ratio * mean) clamped to (0, 1].
double gaussian_probability(RandomSource& source, double mean, double spread_ratio);

/// Skewed choice in [1, n]: normal with mu = (n+1)/2 and sigma = n/6,
/// rounded; draws falling outside [1, n] are redrawn.
std::int64_t skewed_index(RandomSource& source, std::int64_t n);

/// Pool of distinct fixed-length strings over [A-Z0-9], derived from a seed.
class StringReferential {
 public:
  static constexpr std::size_t kDefaultSize = 1000;
  static constexpr std::size_t kEntryLength = 20;

  explicit StringReferential(std::uint64_t seed, std::size_t size = kDefaultSize);
  explicit StringReferential(std::vector<std::string> pool);

  const std::vector<std::string>& pool() const { return pool_; }
  std::size_t size() const { return pool_.size(); }

 private:
  std::vector<std::string> pool_;
};

/// prefix + "_" + a skewed pick from the referential.
std::string referential_string(RandomSource& source, const StringReferential& ref,
                               std::string_view prefix);

/// Per-table primary key counter: 1, 2, 3, ...
class KeySequence {
 public:
  std::int64_t next() { return ++last_; }
  std::int64_t last() const { return last_; }

 private:
  std::int64_t last_ = 0;
};

}  // namespace whbench
