#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quillen/linalg.hpp"

using quillen::DenseVector;
using quillen::Rational;
using quillen::SparseMatrix;

namespace {

SparseMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Rational>> q;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (long v : r) row.emplace_back(v);
    q.push_back(std::move(row));
  }
  return SparseMatrix::from_dense(q);
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> value(-3, 3);
  SparseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (coin(rng) < density) m.set(r, c, Rational(value(rng)));
    }
  }
  return m;
}

}  // namespace

TEST(Rref, ScalesSingleRow) {
  auto r = quillen::rref(dense({{2, 4}}));
  EXPECT_EQ(r.reduced, dense({{1, 2}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, DependentRows) {
  auto r = quillen::rref(dense({{1, 1}, {1, 1}}));
  EXPECT_EQ(r.reduced, dense({{1, 1}, {0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, Permutation) {
  auto r = quillen::rref(dense({{0, 1}, {1, 0}}));
  EXPECT_EQ(r.reduced, dense({{1, 0}, {0, 1}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Solve, UniqueSolution) {
  auto s = quillen::solve(dense({{2}}), {Rational(4)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (DenseVector{Rational(2)}));
  EXPECT_TRUE(s->kernel.empty());
}

TEST(Solve, Homogeneous) {
  auto s = quillen::solve(dense({{1, 1}}), {Rational(0)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (DenseVector{Rational(0), Rational(0)}));
  ASSERT_EQ(s->kernel.size(), 1u);
  EXPECT_EQ(s->kernel[0], (DenseVector{Rational(-1), Rational(1)}) );
}

TEST(Solve, Inconsistent) { EXPECT_FALSE(quillen::solve(dense({{0}}), {Rational(1)})); }

TEST(KernelBasis, Examples) {
  EXPECT_EQ(quillen::kernel_basis(dense({{1, 1}})).size(), 1u);
  EXPECT_TRUE(quillen::kernel_basis(dense({{1, 0}, {0, 1}})).empty());
  auto k = quillen::kernel_basis(dense({{0, 0}}));
  ASSERT_EQ(k.size(), 2u);
  EXPECT_EQ(k[0], (DenseVector{Rational(1), Rational(0)}));
  EXPECT_EQ(k[1], (DenseVector{Rational(0), Rational(1)}));
}

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(quillen::make_rational(2, 4), Rational(1, 2));
  EXPECT_EQ(quillen::make_rational(3, -6), Rational(-1, 2));
}

TEST(RandomMatrices, RankNullityAndOracleRank) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 5u, 20u, 60u, 200u}) {
    for (int trial = 0; trial < 3; ++trial) {
      const std::size_t rows = n;
      const std::size_t cols = n + static_cast<std::size_t>(trial);
      const auto m = random_matrix(rng, rows, cols, n > 50 ? 0.03 : 0.3);
      const std::size_t r = quillen::rank(m);
      const auto kernel = quillen::kernel_basis(m);
      EXPECT_EQ(r + kernel.size(), cols);
      for (const auto& k : kernel) {
        for (const auto& entry : m.multiply(k)) EXPECT_EQ(entry, 0);
      }
      if (n <= 60) {
        EXPECT_EQ(r, oracle::dense_rank(m.to_dense()));
      }
    }
  }
}

TEST(RandomMatrices, SolveReproducesRightHandSide) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_matrix(rng, 12, 15, 0.3);
    std::uniform_int_distribution<int> value(-5, 5);
    DenseVector x(15);
    for (auto& v : x) v = value(rng);
    const DenseVector b = m.multiply(x);
    auto s = quillen::solve(m, b);
    ASSERT_TRUE(s);
    EXPECT_EQ(m.multiply(s->particular), b);
  }
}

TEST(RandomMatrices, Deterministic) {
  std::mt19937_64 a(3), b(3);
  const auto ma = random_matrix(a, 40, 40, 0.2);
  const auto mb = random_matrix(b, 40, 40, 0.2);
  EXPECT_EQ(quillen::rref(ma).reduced, quillen::rref(mb).reduced);
  EXPECT_EQ(quillen::kernel_basis(ma), quillen::kernel_basis(mb));
}

TEST(EchelonBasis, InsertAndReduce) {
  quillen::EchelonBasis e;
  EXPECT_TRUE(e.insert({{0, Rational(2)}, {1, Rational(2)}}));
  EXPECT_FALSE(e.insert({{0, Rational(1)}, {1, Rational(1)}}));
  EXPECT_TRUE(e.insert({{1, Rational(1)}}));
  EXPECT_EQ(e.rank(), 2u);
  EXPECT_TRUE(e.contains({{0, Rational(5)}}));
  EXPECT_EQ(e.pivots(), (std::vector<std::size_t>{0, 1}));
}
