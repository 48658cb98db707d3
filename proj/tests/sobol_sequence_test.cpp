#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lvdyn/error.hpp"
#include "lvdyn/sobol_sequence.hpp"

namespace lvdyn {
namespace {

// Unscrambled reference points (12 dimensions) from scipy.stats.qmc.Sobol.
const std::vector<std::pair<std::uint64_t, std::vector<double>>>& reference() {
  static const std::vector<std::pair<std::uint64_t, std::vector<double>>> points{
      {0, std::vector<double>(12, 0.0)},
      {1, std::vector<double>(12, 0.5)},
      {2, {0.75, 0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75, 0.75, 0.75, 0.75, 0.75}},
      {3, {0.25, 0.75, 0.75, 0.75, 0.25, 0.25, 0.75, 0.25, 0.25, 0.25, 0.25, 0.25}},
      {5, {0.875, 0.875, 0.125, 0.375, 0.875, 0.625, 0.875, 0.375, 0.375, 0.125, 0.375, 0.875}},
      {100, {0.4140625, 0.2578125, 0.7734375, 0.7265625, 0.8828125, 0.7421875, 0.0234375,
             0.4765625, 0.6328125, 0.6953125, 0.4609375, 0.6796875}},
      {1023, {0.0009765625, 0.7529296875, 0.6123046875, 0.1455078125, 0.1865234375,
              0.4384765625, 0.1396484375, 0.6181640625, 0.3447265625, 0.8505859375,
              0.6787109375, 0.0361328125}},
  };
  return points;
}

TEST(SobolSequence, MatchesReferencePointsInOrder) {
  SobolSequence seq(12);
  std::vector<double> p;
  std::uint64_t next_index = 0;
  for (const auto& [index, want] : reference()) {
    while (next_index <= index) {
      seq.next(p);
      ++next_index;
    }
    ASSERT_EQ(p.size(), 12u);
    for (std::size_t d = 0; d < 12; ++d) EXPECT_EQ(p[d], want[d]) << "index " << index << " dim " << d;
  }
}

TEST(SobolSequence, ResetSkipsAhead) {
  SobolSequence seq(12);
  for (const auto& [index, want] : reference()) {
    seq.reset(index);
    EXPECT_EQ(seq.next(), want) << "index " << index;
  }
}

TEST(SobolSequence, FirstPowerOfTwoPointsStratifyEveryAxis) {
  SobolSequence seq(SobolSequence::kMaxDimension, 42u);
  const std::size_t n = 256;
  std::vector<std::vector<int>> hits(SobolSequence::kMaxDimension, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = seq.next();
    for (std::size_t d = 0; d < p.size(); ++d) {
      ASSERT_GE(p[d], 0.0);
      ASSERT_LT(p[d], 1.0);
      ++hits[d][static_cast<std::size_t>(p[d] * n)];
    }
  }
  for (const auto& h : hits) {
    for (int c : h) EXPECT_EQ(c, 1);
  }
}

TEST(SobolSequence, SeedIsDeterministicAndChangesPoints) {
  SobolSequence a(6, 7u), b(6, 7u), c(6, 8u);
  for (int i = 0; i < 50; ++i) {
    const auto pa = a.next();
    EXPECT_EQ(pa, b.next());
    if (i == 3) EXPECT_NE(pa, c.next());
    else c.next();
  }
}

TEST(SobolSequence, RejectsUnsupportedDimension) {
  EXPECT_THROW(SobolSequence(0), Error);
  EXPECT_THROW(SobolSequence(SobolSequence::kMaxDimension + 1), Error);
}

}  // namespace
}  // namespace lvdyn
