#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "simplexlab/field.hpp"

using namespace simplexlab;

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(FieldParams(4, 2), ParameterError);
  EXPECT_THROW(FieldParams(2, 2), ParameterError);
  EXPECT_THROW(FieldParams(3, 0), ParameterError);
  EXPECT_THROW(FieldParams(31, 6), ResourceError);
  EXPECT_NO_THROW(FieldParams(7, 3));
}

TEST(Field, DistanceExamples) {
  FieldParams p5(5, 2);
  EXPECT_EQ(distance(p5, p5.make({1, 2}), p5.zero()), 0u);
  FieldParams p7(7, 3);
  EXPECT_EQ(distance(p7, p7.make({1, 2, 3}), p7.zero()), 0u);
  EXPECT_EQ(distance(p7, p7.make({1, 0, 0}), p7.zero()), 1u);
  Vector x = p7.make({4, 5, 6});
  EXPECT_EQ(distance(p7, x, x), 0u);
}

TEST(Field, IndexRoundTripIsLittleEndian) {
  FieldParams p(5, 3);
  EXPECT_EQ(p.index(p.make({1, 0, 0})), 1u);
  EXPECT_EQ(p.index(p.make({0, 1, 0})), 5u);
  for (std::uint32_t i = 0; i < p.size(); ++i) EXPECT_EQ(p.index(p.point(i)), i);
}

TEST(Field, IndexArithmeticMatchesVectors) {
  FieldParams p(7, 2);
  for (std::uint32_t a = 0; a < p.size(); a += 3) {
    for (std::uint32_t b = 0; b < p.size(); b += 5) {
      EXPECT_EQ(p.add_index(a, b), p.index(p.add(p.point(a), p.point(b))));
      EXPECT_EQ(p.sub_index(a, b), p.index(p.sub(p.point(a), p.point(b))));
      EXPECT_EQ(distance(p, p.point(a), p.point(b)), oracle::dist(p, a, b));
    }
  }
}

TEST(Field, DistanceIsTranslationInvariant) {
  FieldParams p(5, 2);
  Vector w = p.make({3, 1});
  for (std::uint32_t a = 0; a < p.size(); ++a) {
    for (std::uint32_t b = 0; b < p.size(); ++b) {
      Vector x = p.point(a), y = p.point(b);
      EXPECT_EQ(distance(p, p.add(x, w), p.add(y, w)), distance(p, x, y));
    }
  }
}

TEST(Sphere, SmallExamples) {
  FieldParams p(3, 1);
  auto s1 = sphere(p, 1);
  ASSERT_EQ(s1.points.size(), 2u);
  EXPECT_EQ(s1.points[0], p.make({1}));
  EXPECT_EQ(s1.points[1], p.make({2}));
  EXPECT_TRUE(sphere(p, 2).points.empty());
  FieldParams p2(3, 2);
  auto s0 = sphere(p2, 0);
  ASSERT_EQ(s0.points.size(), 1u);
  EXPECT_EQ(s0.points[0], p2.zero());
  EXPECT_THROW(sphere(p2, 3), ParameterError);
}

TEST(Sphere, PartitionsTheSpace) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    FieldParams p(q, 2);
    std::size_t total = 0;
    for (Residue t = 0; t < q; ++t) {
      for (const auto& x : sphere(p, t).points) EXPECT_EQ(p.norm(x), t);
      total += sphere(p, t).points.size();
    }
    EXPECT_EQ(total, p.size());
  }
}

TEST(Field, SquareRootOfMinusOne) {
  EXPECT_TRUE(has_sqrt_minus_one(FieldParams(5, 1)));
  EXPECT_FALSE(has_sqrt_minus_one(FieldParams(7, 1)));
  EXPECT_TRUE(has_sqrt_minus_one(FieldParams(13, 1)));
  EXPECT_FALSE(has_sqrt_minus_one(FieldParams(11, 1)));
}

TEST(Field, RankAgreesWithOracle) {
  FieldParams p(5, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<Vector> rows;
    std::vector<std::vector<std::int64_t>> raw;
    for (int r = 0; r < 1 + i % 4; ++r) {
      Vector v = p.point(std::uint32_t(rng() % p.size()));
      if (i % 3 == 0 && r == 1) v = p.scale(2, rows[0]);
      rows.push_back(v);
      raw.push_back({v[0], v[1], v[2]});
    }
    EXPECT_EQ(rank(p, rows), oracle::matrix_rank(p, raw));
  }
}
