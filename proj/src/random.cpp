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

#include "whbench/random.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace whbench {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr std::size_t kAlphabetSize = sizeof(kAlphabet) - 1;

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : state_) word = splitmix64(x);
}

RandomSource RandomSource::substream(std::uint64_t master_seed, std::string_view name) {
  std::uint64_t x = master_seed ^ fnv1a64(name);
  return RandomSource(splitmix64(x));
}

RandomSource RandomSource::from_state(const std::array<std::uint64_t, 4>& state) {
  RandomSource source;
  source.state_ = state;
  return source;
}

std::uint64_t RandomSource::next_u64() {
  auto& s = state_;
  const std::uint64_t result = std::rotl(s[1] * 5, 7) * 9;
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = std::rotl(s[3], 45);
  return result;
}

double RandomSource::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_float(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform_float: empty range");
  double v = lo + (hi - lo) * next_unit();
  // Rounding of lo + (hi - lo) * u can land exactly on hi.
  return v < hi ? v : std::nextafter(hi, lo);
}

std::int64_t RandomSource::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = next_u64();
  while (draw >= limit) draw = next_u64();
  return lo + static_cast<std::int64_t>(draw % span);
}

double RandomSource::standard_normal() {
  if (spare_normal_) {
    double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

double RandomSource::normal(double mean, double sigma) {
  return mean + sigma * standard_normal();
}

std::int64_t gaussian_int(RandomSource& source, double mean, double spread_ratio) {
  const double draw = source.normal(mean, spread_ratio * mean);
  const double rounded = std::floor(draw + 0.5);
  if (rounded < 1.0) return 1;
  if (rounded > 9.0e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(rounded);
}

double gaussian_probability(RandomSource& source, double mean, double spread_ratio) {
  constexpr double kFloor = 1e-3;
  const double draw = source.normal(mean, spread_ratio * mean);
  if (draw < kFloor) return kFloor;
  return draw > 1.0 ? 1.0 : draw;
}

std::int64_t skewed_index(RandomSource& source, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("skewed_index: n must be at least 1");
  if (n == 1) return 1;
  const double mu = (static_cast<double>(n) + 1.0) / 2.0;
  const double sigma = static_cast<double>(n) / 6.0;
  for (;;) {
    const double rounded = std::floor(source.normal(mu, sigma) + 0.5);
    if (rounded >= 1.0 && rounded <= static_cast<double>(n)) {
      return static_cast<std::int64_t>(rounded);
    }
  }
}

StringReferential::StringReferential(std::uint64_t seed, std::size_t size) {
  auto source = RandomSource::substream(seed, "__referential__");
  std::unordered_set<std::string> seen;
  pool_.reserve(size);
  while (pool_.size() < size) {
    std::string entry(kEntryLength, ' ');
    for (auto& c : entry) {
      c = kAlphabet[source.uniform_int(0, static_cast<std::int64_t>(kAlphabetSize) - 1)];
    }
    if (seen.insert(entry).second) pool_.push_back(std::move(entry));
  }
}

StringReferential::StringReferential(std::vector<std::string> pool) : pool_(std::move(pool)) {
  if (pool_.empty()) throw std::invalid_argument("string referential must not be empty");
}

std::string referential_string(RandomSource& source, const StringReferential& ref,
                               std::string_view prefix) {
  if (ref.size() == 0) throw std::invalid_argument("string referential is empty");
  const auto pick = skewed_index(source, static_cast<std::int64_t>(ref.size()));
  std::string out(prefix);
  out += '_';
  out += ref.pool()[static_cast<std::size_t>(pick - 1)];
  return out;
}

}  // namespace whbench
