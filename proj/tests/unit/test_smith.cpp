#include <gtest/gtest.h>

#include <random>

#include "gtc/smith.hpp"

using namespace gtc;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long lo, long hi) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(lo, hi);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
  return m;
}

// Invariant factors from determinantal divisors: d_k = gcd of all k x k
// minors, s_k = d_k / d_{k-1}.
std::vector<Integer> invariants_by_minors(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t idx, std::size_t from) {
      if (idx == k) {
        pick_cols(0, 0);
        return;
      }
      for (std::size_t i = from; i < r; ++i) {
        rows[idx] = i;
        pick_rows(idx + 1, i + 1);
      }
    };
    pick_cols = [&](std::size_t idx, std::size_t from) {
      if (idx == k) {
        IntMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub.at(a, b) = m.at(rows[a], cols[b]);
        Integer d = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (std::size_t j = from; j < c; ++j) {
        cols[idx] = j;
        pick_cols(idx + 1, j + 1);
      }
    };
    pick_rows(0, 0);
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST(Smith, ZeroMatrix) {
  IntMatrix z(3, 2);
  auto r = smith_normal_form(z);
  EXPECT_TRUE(r.d.is_zero());
  EXPECT_EQ(r.u, IntMatrix::identity(3));
  EXPECT_EQ(r.v, IntMatrix::identity(2));
  EXPECT_EQ(r.rank, 0u);
}

TEST(Smith, DiagTwoThree) {
  auto m = IntMatrix::from_rows({{2, 0}, {0, 3}});
  auto r = smith_normal_form(m);
  EXPECT_EQ(r.d, IntMatrix::from_rows({{1, 0}, {0, 6}}));
  EXPECT_TRUE(verify_smith(m, r).ok());
}

TEST(Smith, SingleEntryTwo) {
  auto m = IntMatrix::from_rows({{2}});
  auto r = smith_normal_form(m);
  EXPECT_EQ(r.d, m);
}

TEST(Smith, NegativePivotMadePositive) {
  auto m = IntMatrix::from_rows({{-4, 6}, {2, -8}});
  auto r = smith_normal_form(m);
  EXPECT_TRUE(verify_smith(m, r).ok());
  ASSERT_EQ(r.invariants.size(), 2u);
  EXPECT_EQ(r.invariants[0], 2);
  EXPECT_EQ(r.invariants[1], 10);
}

TEST(Smith, Determinant) {
  EXPECT_EQ(determinant(IntMatrix::from_rows({{1, 2}, {3, 4}})), -2);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 5}})), -5);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{2, 4}, {1, 2}})), 0);
}

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m = random_matrix(rng, 4, -6, 6);
    auto r = smith_normal_form(m);
    EXPECT_EQ(r.invariants, invariants_by_minors(m)) << m.to_string();
  }
}

TEST(Smith, RandomChecksPass) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m = random_matrix(rng, 8, -9, 9);
    auto r = smith_normal_form(m);
    auto check = verify_smith(m, r);
    EXPECT_TRUE(check.ok()) << m.to_string();
    auto fast = smith_normal_form(m, false);
    EXPECT_EQ(fast.invariants, r.invariants);
  }
}

TEST(Smith, LowRankMatrices) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    // Outer product of two vectors has rank <= 1.
    IntMatrix a(5, 1), b(1, 6);
    for (std::size_t i = 0; i < 5; ++i) a.at(i, 0) = entry(rng);
    for (std::size_t j = 0; j < 6; ++j) b.at(0, j) = entry(rng);
    IntMatrix m = a * b;
    auto r = smith_normal_form(m);
    EXPECT_LE(r.rank, 1u);
    EXPECT_TRUE(verify_smith(m, r).ok());
  }
}
