#include <gtest/gtest.h>

#include "splitrank/errors.hpp"
#include "splitrank/numeric.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace splitrank;

TEST(ParseRational, AcceptsCanonicalForms) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-0")), "0");
  EXPECT_EQ(to_string(parse_rational("10/5")), "2");
}

TEST(ParseRational, RejectsMalformed) {
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "1.5", "+1", "1/-2", " 1", "a", "--1"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(ParseRational, RoundTripsRandomValues) {
  splitrank::testing::Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const Rational r = rng.rational(1000, 97);
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

TEST(FloorCeil, NegativeFractions) {
  EXPECT_EQ(floor(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil(Rational(-1, 2)), 0);
  EXPECT_EQ(floor(Rational(7, 3)), 2);
  EXPECT_EQ(ceil(Rational(7, 3)), 3);
  EXPECT_EQ(floor(Rational(-4)), -4);
  EXPECT_EQ(ceil(Rational(-4)), -4);
}

TEST(FloorCeil, BracketEveryValue) {
  splitrank::testing::Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const Rational r = rng.rational(100, 13);
    const Integer f = floor(r), c = ceil(r);
    EXPECT_LE(Rational(f), r);
    EXPECT_LT(r, Rational(f + 1));
    EXPECT_GE(Rational(c), r);
    EXPECT_GT(r, Rational(c - 1));
    EXPECT_EQ(f == c, is_integral(r));
  }
}

TEST(PrimitiveVector, ScalesToCoprimeIntegers) {
  EXPECT_EQ(primitive_vector({Rational(2, 3), Rational(-4, 3)}), (RatVector{1, -2}));
  EXPECT_EQ(primitive_vector({0, 6, 9}), (RatVector{0, 2, 3}));
  EXPECT_EQ(primitive_vector({Rational(-1, 2), 0}), (RatVector{-1, 0}));
  EXPECT_THROW(primitive_vector({0, 0}), ZeroVector);
}

TEST(ToInteger, RejectsFractions) {
  EXPECT_EQ(to_integer(RatVector{3, -2}), (IntVector{3, -2}));
  EXPECT_THROW(to_integer(RatVector{Rational(1, 2)}), NotIntegral);
}

TEST(CanonicalLess, LexicographicallyLargerFirst) {
  EXPECT_TRUE(canonical_less({1, 0}, {0, 1}));
  EXPECT_TRUE(canonical_less({0, 1}, {0, -1}));
  EXPECT_FALSE(canonical_less({0, 1}, {0, 1}));
}

TEST(Rref, RankAndNullSpace) {
  const RatMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(m), 2u);
  const RatMatrix ker = null_space(m, 3);
  ASSERT_EQ(ker.size(), 1u);
  for (const auto& row : m) EXPECT_EQ(dot(row, ker[0]), 0);
}

TEST(Solve, MatchesGaussianOracle) {
  splitrank::testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    RatMatrix a;
    for (std::size_t r = 0; r < n; ++r) a.push_back(rng.point(n, 5, 3));
    const RatVector b = rng.point(n, 5, 3);
    const auto oracle = splitrank::testing::gauss_solve(a, b);
    const auto mine = solve(a, b, n);
    if (oracle) {
      ASSERT_TRUE(mine);
      EXPECT_EQ(*mine, *oracle);
    } else if (mine) {
      for (std::size_t r = 0; r < n; ++r) EXPECT_EQ(dot(a[r], *mine), b[r]);
    }
  }
}

TEST(Solve, InconsistentSystem) {
  EXPECT_FALSE(solve({{1, 1}, {1, 1}}, {0, 1}, 2));
}

TEST(Transpose, SwapsIndices) {
  const RatMatrix m{{1, 2, 3}, {4, 5, 6}};
  const RatMatrix t = transpose(m, 3);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[2], (RatVector{3, 6}));
}
