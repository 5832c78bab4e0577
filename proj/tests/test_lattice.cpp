#include <gtest/gtest.h>

#include "splitrank/errors.hpp"
#include "splitrank/lattice.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace splitrank;
using splitrank::testing::Rng;

namespace {

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(a.size(), IntVector(cols, Integer(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

// Every row of `a` is an integer combination of the rows of `b` (both full
// row rank, same span).
bool rows_in_lattice(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = b.empty() ? 0 : b[0].size();
  const RatMatrix bt = transpose(to_rational(b), n);
  for (const auto& row : a) {
    const auto coeffs = solve(bt, to_rational(row), b.size());
    if (!coeffs || !is_integral(*coeffs)) return false;
  }
  return true;
}

IntMatrix random_full_rank(Rng& rng, std::size_t k, std::size_t n, long bound) {
  while (true) {
    IntMatrix m;
    for (std::size_t i = 0; i < k; ++i) m.push_back(rng.integer_vector(n, bound));
    if (rank(to_rational(m)) == k) return m;
  }
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  const IntMatrix id{{1, 0}, {0, 1}};
  const HermiteForm hf = hnf(id);
  EXPECT_EQ(hf.H, id);
  EXPECT_EQ(hf.U, id);
}

TEST(Hnf, AlreadyReduced) {
  const IntMatrix m{{2, 0}, {0, 2}};
  EXPECT_EQ(hnf(m).H, m);
}

TEST(Hnf, SameRowLattice) {
  const IntMatrix w{{2, 1}, {0, 1}};
  const HermiteForm hf = hnf(w);
  EXPECT_EQ(multiply(hf.U, w), hf.H);
  EXPECT_EQ(abs(determinant(hf.U)), 1);
  EXPECT_TRUE(rows_in_lattice(hf.H, w));
  EXPECT_TRUE(rows_in_lattice(w, hf.H));
}

TEST(Hnf, RejectsDependentRows) {
  EXPECT_THROW(hnf({{1, 2}, {2, 4}}), RankDeficient);
}

TEST(Hnf, RandomIdentities) {
  Rng rng(11);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    const IntMatrix w = random_full_rank(rng, k, n, 12);
    const HermiteForm hf = hnf(w);
    ASSERT_EQ(multiply(hf.U, w), hf.H);
    ASSERT_EQ(abs(determinant(hf.U)), 1);
    ASSERT_TRUE(rows_in_lattice(hf.H, w));
    ASSERT_TRUE(rows_in_lattice(w, hf.H));
    // Echelon shape with positive pivots and reduced entries above them.
    std::size_t last = 0;
    for (std::size_t r = 0; r < k; ++r) {
      std::size_t p = 0;
      while (hf.H[r][p] == 0) ++p;
      if (r > 0) ASSERT_GT(p, last);
      last = p;
      ASSERT_GT(hf.H[r][p], 0);
      for (std::size_t a = 0; a < r; ++a) {
        ASSERT_GE(hf.H[a][p], 0);
        ASSERT_LT(hf.H[a][p], hf.H[r][p]);
      }
    }
  }
}

TEST(Determinant, MatchesCofactorExpansion) {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const IntMatrix m{rng.integer_vector(3, 9), rng.integer_vector(3, 9), rng.integer_vector(3, 9)};
    const Integer cof = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    EXPECT_EQ(determinant(m), cof);
  }
}

TEST(UnimodularInverse, RoundTrip) {
  const IntMatrix u{{2, 1}, {1, 1}};
  EXPECT_EQ(multiply(u, unimodular_inverse(u)), (IntMatrix{{1, 0}, {0, 1}}));
  EXPECT_THROW(unimodular_inverse({{2, 0}, {0, 1}}), Error);
}

TEST(IntegerKernel, SpansTheKernelLattice) {
  const IntMatrix a{{1, 2, 3}};
  const IntMatrix ker = integer_kernel(a, 3);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& row : ker) EXPECT_EQ(dot(to_rational(a[0]), to_rational(row)), 0);
  // Kernel lattice of (1,2,3) is generated by (2,-1,0) and (3,0,-1).
  EXPECT_TRUE(rows_in_lattice({{2, -1, 0}, {3, 0, -1}}, ker));
}

TEST(LatticeBasis, RequiresUnimodular) {
  EXPECT_NO_THROW(LatticeBasis({{1, 1}, {0, 1}}));
  EXPECT_THROW(LatticeBasis({{2, 0}, {0, 1}}), Error);
  EXPECT_THROW(LatticeBasis({{1, 0}}), Error);
}

TEST(ExtendToLatticeBasis, Examples) {
  EXPECT_EQ(extend_to_lattice_basis({{1, 0}}, 2).rows(), (IntMatrix{{1, 0}, {0, 1}}));
  const LatticeBasis b = extend_to_lattice_basis({{1, 2}}, 2);
  EXPECT_EQ(b.rows()[0], (IntVector{1, 2}));
  EXPECT_EQ(abs(determinant(b.rows())), 1);
}

TEST(ExtendToLatticeBasis, ReportsWitness) {
  try {
    extend_to_lattice_basis({{2, 0}}, 2);
    FAIL() << "expected NotPrimitive";
  } catch (const NotPrimitive& e) {
    ASSERT_EQ(e.witness.size(), 2u);
    EXPECT_EQ(e.witness[1], 0);
    EXPECT_FALSE(is_integral(e.witness[0] / 2));
  }
}

TEST(ExtendToLatticeBasis, RandomPrimitiveSystems) {
  Rng rng(13);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
    // Rows of a random unimodular matrix form a primitive system.
    IntMatrix u = random_full_rank(rng, n, n, 3);
    if (abs(determinant(u)) != 1) continue;
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    u.resize(k);
    const LatticeBasis b = extend_to_lattice_basis(u, n);
    ASSERT_EQ(abs(determinant(b.rows())), 1);
    for (std::size_t r = 0; r < k; ++r) ASSERT_EQ(b.rows()[r], u[r]);
  }
}

TEST(BasisInCone, Examples) {
  EXPECT_EQ(basis_in_cone({{1, 0}, {0, 1}}, 2), (IntMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(basis_in_cone({{1, 1}}, 2), (IntMatrix{{1, 1}}));
  const IntMatrix w = basis_in_cone({{1, 0}, {1, 2}}, 2);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(abs(determinant(w)), 1);
  for (const auto& row : w) EXPECT_TRUE(splitrank::testing::in_cone({{1, 0}, {1, 2}}, to_rational(row)));
}

TEST(BasisInCone, RandomCones) {
  Rng rng(14);
  for (int i = 0; i < 120; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    const RatMatrix g = splitrank::testing::random_cone_generators(rng, n, k);
    const IntMatrix w = basis_in_cone(g, n);
    ASSERT_EQ(w.size(), k);
    for (const auto& row : w) ASSERT_TRUE(splitrank::testing::in_cone(g, to_rational(row)));
    ASSERT_TRUE(splitrank::testing::box_parallelepiped_points(to_rational(w)).empty());
    ASSERT_NO_THROW(extend_to_lattice_basis(w, n));
  }
}

TEST(ParallelepipedLatticePoints, AgreesWithBoxScan) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    const RatMatrix g = splitrank::testing::random_cone_generators(rng, n, k, 3);
    IntMatrix h;
    for (const auto& row : g) h.push_back(to_integer(primitive_vector(row)));
    RatMatrix mine = parallelepiped_lattice_points(h, n);
    RatMatrix oracle = splitrank::testing::box_parallelepiped_points(to_rational(h));
    std::sort(mine.begin(), mine.end());
    std::sort(oracle.begin(), oracle.end());
    ASSERT_EQ(mine, oracle);
  }
}
