#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "qwave/band_matrix.hpp"

using namespace qwave;

namespace {

SymBandMatrix random_band(std::size_t n, std::size_t bw, std::uint64_t seed, double diag_shift = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymBandMatrix a(n, bw);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i >= bw ? i - bw : 0; j <= i; ++j) a.set(i, j, u(rng));
    a.add(i, i, diag_shift);
  }
  return a;
}

}  // namespace

TEST(SymBand, SymmetricAccessAndMultiply) {
  auto a = random_band(9, 3, 1);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(a(i, j), a(j, i));
  EXPECT_EQ(a(8, 0), 0.0);
  std::vector<double> x(9), y(9);
  for (std::size_t i = 0; i < 9; ++i) x[i] = 0.1 * static_cast<double>(i) - 0.3;
  a.multiply(x, y);
  for (std::size_t i = 0; i < 9; ++i) {
    double expect = 0.0;
    for (std::size_t j = 0; j < 9; ++j) expect += a(i, j) * x[j];
    EXPECT_NEAR(y[i], expect, 1e-14);
  }
  double q = 0.0;
  for (std::size_t i = 0; i < 9; ++i) q += x[i] * y[i];
  EXPECT_NEAR(a.quadratic_form(x), q, 1e-14);
}

TEST(SymBand, CombineAndCongruence) {
  auto a = random_band(6, 2, 2), b = random_band(6, 2, 3);
  auto c = combine(a, -2.0, b);
  EXPECT_NEAR(c(3, 2), a(3, 2) - 2.0 * b(3, 2), 1e-15);
  std::vector<double> d{1.0, 4.0, 9.0, 1.0, 4.0, 0.25};
  auto s = a.congruence_by_inverse_sqrt(d);
  EXPECT_NEAR(s(2, 1), a(2, 1) / 6.0, 1e-15);
  EXPECT_NEAR(s(5, 5), a(5, 5) * 4.0, 1e-15);
}

TEST(SymBand, CoordinateExport) {
  SymBandMatrix a(3, 1);
  a.set(0, 0, 2.0);
  a.set(1, 0, -1.0);
  a.set(1, 1, 2.0);
  a.set(2, 2, 2.0);
  std::ostringstream out;
  a.write_coordinates(out);
  std::istringstream in(out.str());
  std::size_t n, nnz;
  in >> n >> nnz;
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(nnz, 5u);
  std::size_t i, j;
  double v, total = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) {
    in >> i >> j >> v;
    EXPECT_DOUBLE_EQ(v, a(i - 1, j - 1));
    total += v;
  }
  EXPECT_DOUBLE_EQ(total, 4.0);
}

TEST(BandLDLT, SolvesAndCountsInertia) {
  auto a = random_band(40, 4, 5, 6.0);
  BandLDLT f(a, 0.5);
  std::vector<double> x(40), b(40);
  for (std::size_t i = 0; i < 40; ++i) x[i] = std::cos(static_cast<double>(i));
  // b = (A - 0.5 I) x
  a.multiply(x, b);
  for (std::size_t i = 0; i < 40; ++i) b[i] -= 0.5 * x[i];
  f.solve(b);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(b[i], x[i], 1e-10);
  // Diagonal matrix: inertia is a plain count.
  SymBandMatrix d(5, 1);
  for (std::size_t i = 0; i < 5; ++i) d.set(i, i, static_cast<double>(i));
  EXPECT_EQ(BandLDLT(d, 2.5).negative_count(), 3u);
  EXPECT_EQ(BandLDLT(d, -1.0).negative_count(), 0u);
}

TEST(SymBand, GershgorinEnclosesSpectrum) {
  auto a = random_band(30, 3, 8);
  const double lo = a.gershgorin_lower(), hi = a.gershgorin_upper();
  EXPECT_EQ(BandLDLT(a, lo).negative_count(), 0u);
  EXPECT_EQ(BandLDLT(a, hi).negative_count(), 30u);
}
