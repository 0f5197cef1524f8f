#include "whbench/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

namespace whbench {
namespace {

TEST(RandomSource, MatchesXoshiroReferenceVector) {
  auto source = RandomSource::from_state({1, 2, 3, 4});
  const std::vector<std::uint64_t> expected = {
      11520ULL, 0ULL, 1509978240ULL, 1215971899390074240ULL, 0x10e0b61ce1009d80ULL,
      0x0870021ce143ad00ULL};
  for (auto e : expected) EXPECT_EQ(source.next_u64(), e);
}

TEST(RandomSource, SeedExpansionUsesSplitmix) {
  // splitmix64 from 0 gives e220a8397b1dcdaf, 6e789e6aa1b965f4, ...
  RandomSource seeded(0);
  auto manual = RandomSource::from_state(
      {0xe220a8397b1dcdafULL, 0x6e789e6aa1b965f4ULL, 0x06c45d188009454fULL, 0xf88bb8a8724c81ecULL});
  for (int i = 0; i < 8; ++i) EXPECT_EQ(seeded.next_u64(), manual.next_u64());

  RandomSource s42(42);
  EXPECT_EQ(s42.next_u64(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(s42.next_u64(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(s42.next_u64(), 0xae17533239e499a1ULL);
}

TEST(Fnv1a64, KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("__schema__"), 0xccc03fb7866c5f0aULL);
}

TEST(RandomSource, SubstreamsAreIndependentOfEachOther) {
  auto a1 = RandomSource::substream(7, "DIM1_1");
  auto a2 = RandomSource::substream(7, "DIM1_1");
  auto b = RandomSource::substream(7, "DIM1_2");
  auto c = RandomSource::substream(8, "DIM1_1");
  const auto x = a1.next_u64();
  EXPECT_EQ(x, a2.next_u64());
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(UniformFloat, StaysInHalfOpenRange) {
  RandomSource source(3);
  for (int i = 0; i < 100000; ++i) {
    const double v = source.uniform_float(0, 1);
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
  for (int i = 0; i < 1000; ++i) {
    const double v = source.uniform_float(1.0, std::nextafter(1.0, 2.0));
    ASSERT_EQ(v, 1.0);
  }
  EXPECT_THROW(source.uniform_float(1, 1), std::invalid_argument);
}

TEST(UniformFloat, MeanOfManyDraws) {
  RandomSource source(11);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += source.uniform_float(0, 1);
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(UniformFloat, SameSeedSameSequence) {
  RandomSource a(99), b(99);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform_float(-5, 5), b.uniform_float(-5, 5));
}

TEST(UniformInt, CoversRangeWithoutBias) {
  RandomSource source(5);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(source.uniform_int(0, 5))];
  for (int c : counts) EXPECT_NEAR(c, n / 6, 400);
  EXPECT_EQ(source.uniform_int(4, 4), 4);
}

TEST(StandardNormal, MomentsMatch) {
  RandomSource source(17);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = source.standard_normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.02);
}

TEST(GaussianInt, ZeroSpreadReturnsMean) {
  RandomSource source(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(gaussian_int(source, 5, 0), 5);
}

TEST(GaussianInt, SampleMeanNearConfiguredMean) {
  RandomSource source(2);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(gaussian_int(source, 5, 0.2));
  EXPECT_NEAR(sum / n, 5.0, 0.1);
}

TEST(GaussianInt, NeverBelowOne) {
  RandomSource source(4);
  for (int i = 0; i < 10000; ++i) ASSERT_GE(gaussian_int(source, 1, 2.0), 1);
}

TEST(GaussianProbability, ClampedToUnitInterval) {
  RandomSource source(8);
  for (int i = 0; i < 10000; ++i) {
    const double p = gaussian_probability(source, 0.9, 0.5);
    ASSERT_GT(p, 0.0);
    ASSERT_LE(p, 1.0);
  }
}

TEST(SkewedIndex, SingleOutcome) {
  RandomSource source(1);
  EXPECT_EQ(skewed_index(source, 1), 1);
}

TEST(SkewedIndex, CentreFavouredOverEdges) {
  RandomSource source(21);
  std::vector<int> counts(1001, 0);
  for (int i = 0; i < 1000000; ++i) {
    const auto k = skewed_index(source, 1000);
    ASSERT_GE(k, 1);
    ASSERT_LE(k, 1000);
    ++counts[static_cast<std::size_t>(k)];
  }
  EXPECT_GT(counts[500], 5 * counts[1]);
}

TEST(SkewedIndex, Deterministic) {
  RandomSource a(30), b(30);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(skewed_index(a, 37), skewed_index(b, 37));
}

TEST(StringReferential, DistinctFixedLengthEntries) {
  StringReferential ref(12);
  ASSERT_EQ(ref.size(), 1000u);
  std::set<std::string> seen(ref.pool().begin(), ref.pool().end());
  EXPECT_EQ(seen.size(), 1000u);
  for (const auto& s : ref.pool()) {
    ASSERT_EQ(s.size(), StringReferential::kEntryLength);
    for (char c : s) ASSERT_TRUE((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'));
  }
  EXPECT_EQ(StringReferential(12).pool(), ref.pool());
  EXPECT_NE(StringReferential(13).pool(), ref.pool());
}

TEST(ReferentialString, SingleEntryPool) {
  StringReferential ref(std::vector<std::string>{"ABCDEFGHIJ0123456789"});
  RandomSource source(1);
  EXPECT_EQ(referential_string(source, ref, "DIM1_1_DESCR1"), "DIM1_1_DESCR1_ABCDEFGHIJ0123456789");
}

TEST(KeySequence, CountsFromOne) {
  KeySequence keys;
  EXPECT_EQ(keys.next(), 1);
  EXPECT_EQ(keys.next(), 2);
  EXPECT_EQ(keys.next(), 3);
  EXPECT_EQ(keys.last(), 3);
}

}  // namespace
}  // namespace whbench
