#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qwave/eigensolver.hpp"

using namespace qwave;

namespace {

SymBandMatrix random_band(std::size_t n, std::size_t bw, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymBandMatrix a(n, bw);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i >= bw ? i - bw : 0; j <= i; ++j) a.set(i, j, u(rng));
  return a;
}

std::vector<std::vector<double>> dense(const SymBandMatrix& a) {
  std::vector<std::vector<double>> m(a.size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a(i, j);
  return m;
}

}  // namespace

TEST(Eigensolver, DenseMatchesJacobiOracle) {
  auto a = random_band(25, 3, 1);
  const auto ref = oracle::jacobi_eigenvalues(dense(a));
  const auto ev = dense_eigenvalues(a);
  ASSERT_EQ(ev.size(), ref.size());
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], ref[i], 1e-11);
}

TEST(Eigensolver, SlicingMatchesJacobiOracle) {
  auto a = random_band(120, 4, 2);
  const auto ref = oracle::jacobi_eigenvalues(dense(a));
  EigenOptions opts;
  opts.dense_threshold = 0;
  EigenStats stats;
  const auto ev = eigenvalues_in(a, -1.0, 0.5, opts, &stats);
  std::vector<double> expect;
  for (double r : ref)
    if (r >= -1.0 && r < 0.5) expect.push_back(r);
  ASSERT_EQ(ev.size(), expect.size());
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expect[i], 1e-10);
  EXPECT_FALSE(stats.dense);
  EXPECT_GT(stats.factorizations, 0u);
}

TEST(Eigensolver, CountBelowMatchesOracle) {
  auto a = random_band(60, 2, 3);
  const auto ref = oracle::jacobi_eigenvalues(dense(a));
  for (double x : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
    const auto n = static_cast<std::size_t>(std::count_if(ref.begin(), ref.end(), [x](double r) { return r < x; }));
    EXPECT_EQ(count_below(a, x), n) << x;
  }
}

TEST(Eigensolver, MultipleEigenvalues) {
  // Block diagonal with repeated blocks: every eigenvalue has multiplicity 3.
  SymBandMatrix a(12, 1);
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < 4; ++i) {
      a.set(4 * b + i, 4 * b + i, 2.0);
      if (i > 0) a.set(4 * b + i, 4 * b + i - 1, -1.0);
    }
  }
  EigenOptions opts;
  opts.dense_threshold = 0;
  const auto ev = eigenvalues_in(a, -10.0, 10.0, opts);
  ASSERT_EQ(ev.size(), 12u);
  for (std::size_t k = 0; k < 4; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(oracle::pi * static_cast<double>(k + 1) / 5.0);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_NEAR(ev[3 * k + r], exact, 1e-9);
  }
}

TEST(Eigensolver, LowestOfLaplacian) {
  const std::size_t n = 500;
  SymBandMatrix a(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, 2.0);
    if (i > 0) a.set(i, i - 1, -1.0);
  }
  const auto ev = lowest_eigenvalues(a, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(oracle::pi * static_cast<double>(k + 1) / static_cast<double>(n + 1));
    EXPECT_NEAR(ev[k], exact, 1e-13);
  }
}
