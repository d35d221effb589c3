#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qwave/errors.hpp"
#include "qwave/solver.hpp"

using namespace qwave;
using oracle::pi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::ParseError;
}

Potential well(double V0, double a, double d) {
  return potential_library("square_well_x", {{"V0", V0}, {"a", a}}, d);
}

// Eigenvalues of the tridiagonal Dirichlet operator -h'' - V on the x nodes of the grid.
std::vector<double> x_operator(const Grid2D& g, const std::function<double(double)>& v) {
  const std::size_t n = g.nx - 1;
  const double h = g.hx();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 2.0 / (h * h) - v(g.x(i + 1));
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1.0 / (h * h);
  }
  return oracle::jacobi_eigenvalues(m);
}

// Transverse three-point operator, Dirichlet at 0 and a symmetrised ghost node at d.
std::vector<double> y_operator(const Grid2D& g) {
  const std::size_t n = g.ny;
  const double h = g.hy();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    m[j][j] = 2.0 / (h * h);
    if (j + 1 < n) m[j][j + 1] = m[j + 1][j] = -1.0 / (h * h);
  }
  m[n - 1][n - 1] = 2.0 / (h * h);
  m[n - 1][n - 2] = m[n - 2][n - 1] = -std::sqrt(2.0) / (h * h);
  return oracle::jacobi_eigenvalues(m);
}

}  // namespace

TEST(AssembleStraight, SymmetricPositiveDiagonal) {
  Grid2D g{2.0, 1.0, 4, 2};
  auto a = assemble_straight(Potential{}, 1.0, g);
  EXPECT_EQ(a.size(), g.dofs());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GT(a(i, i), 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a(i, j), a(j, i));
  }
}

TEST(AssembleStraight, EmptyGuideGroundStateApproachesThreshold) {
  // Transverse ground energy plus the longitudinal Dirichlet box energy (pi / 2S)^2.
  double previous = 0.0;
  double box = 0.0;
  for (double S : {8.0, 16.0}) {
    box = pi * pi / 4.0 + pi * pi / (4.0 * S * S);
    for (std::size_t f : {1u, 2u, 4u}) {
      Grid2D g{S, 1.0, static_cast<std::size_t>(8.0 * S) * f, 8 * f};
      const double lowest = lowest_eigenvalues(assemble_straight(Potential{}, 1.0, g), 1)[0];
      if (f > 1) EXPECT_LT(std::abs(lowest - box), std::abs(previous - box));
      previous = lowest;
    }
    EXPECT_NEAR(previous, box, 5e-4 * box);
  }
  EXPECT_NEAR(previous, pi * pi / 4.0, 5e-3 * pi * pi / 4.0);
}

TEST(AssembleStraight, SeparatesForXOnlyPotential) {
  Grid2D g{4.0, 1.0, 40, 6};
  auto v = well(3.0, 1.0, 1.0);
  const auto mu = x_operator(g, [&](double x) { return v(x, 0.5); });
  const auto nu = y_operator(g);
  std::vector<double> expect;
  for (double a : mu)
    for (double b : nu)
      if (a + b < 40.0) expect.push_back(a + b);
  std::sort(expect.begin(), expect.end());
  EigenOptions sliced;
  sliced.dense_threshold = 0;
  const auto ev = eigenvalues_in(assemble_straight(v, 1.0, g), -100.0, 40.0, sliced);
  ASSERT_EQ(ev.size(), expect.size());
  ASSERT_GT(ev.size(), 10u);
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expect[i], 1e-9);
  EXPECT_NEAR(nu[0], discrete_threshold(g), 1e-10);
}

TEST(EigenBelow, EmptyWaveguideHasNoBoundStates) {
  for (double S : {8.0, 16.0}) {
    for (double h : {0.1, 0.05}) {
      auto r = solve_straight(Potential{}, 1.0, Grid2D::with_spacing(S, 1.0, h));
      EXPECT_EQ(r.count, 0u);
      EXPECT_EQ(r.negative_sum, 0.0);
    }
  }
}

TEST(EigenBelow, WellMatchesOneDimensionalCount) {
  const double d = 1.0;
  for (double V0 : {0.5, 1.0, 3.0}) {
    auto r = solve_straight(well(V0, 1.0, d), d, Grid2D::with_spacing(8.0, d, 0.025));
    EXPECT_EQ(static_cast<int>(r.count), oracle::square_well_count(V0, 1.0)) << V0;
    EXPECT_NEAR(r.eigenvalues_below.front() - r.threshold, oracle::square_well_ground(V0, 1.0),
                0.02 * std::abs(oracle::square_well_ground(V0, 1.0)));
  }
}

TEST(EigenBelow, ResultInvariants) {
  auto v = potential_library("gaussian", {{"A", 1.0}, {"sigma", 1.0}}, 1.0).scaled(16.0);
  auto r = solve_straight(v, 1.0, Grid2D::with_spacing(10.0, 1.0, 0.1));
  EXPECT_EQ(r.count, r.eigenvalues_below.size());
  EXPECT_TRUE(std::is_sorted(r.eigenvalues_below.begin(), r.eigenvalues_below.end()));
  EXPECT_GE(r.negative_sum, 0.0);
  for (double lambda : r.eigenvalues_below) EXPECT_LT(lambda, r.threshold);
}

TEST(EigenBelow, MonotoneInCoupling) {
  auto v = potential_library("gaussian", {{"sigma", 0.8}}, 1.0);
  const Grid2D g = Grid2D::with_spacing(8.0, 1.0, 0.1);
  std::size_t count = 0;
  double sum = 0.0;
  for (double alpha : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    auto r = solve_straight(v.scaled(alpha), 1.0, g);
    EXPECT_GE(r.count, count);
    EXPECT_GE(r.negative_sum, sum);
    count = r.count;
    sum = r.negative_sum;
  }
}

TEST(EigenBelow, MonotoneInPotential) {
  const Grid2D g = Grid2D::with_spacing(8.0, 1.0, 0.1);
  auto small = solve_straight(potential_library("y_band", {{"V0", 6.0}, {"a", 1.0}}, 1.0), 1.0, g);
  auto large = solve_straight(well(6.0, 1.0, 1.0), 1.0, g);
  EXPECT_LE(small.count, large.count);
  EXPECT_LE(small.negative_sum, large.negative_sum);
}

TEST(EigenBelow, TruncationStability) {
  auto v = potential_library("gaussian", {{"sigma", 1.0}}, 1.0).scaled(6.0);
  auto a = solve_straight(v, 1.0, Grid2D{8.0, 1.0, 160, 10});
  auto b = solve_straight(v, 1.0, Grid2D{16.0, 1.0, 320, 10});
  EXPECT_EQ(a.count, b.count);
  EXPECT_LT(std::abs(a.negative_sum - b.negative_sum), 1e-3 * b.negative_sum);
}

TEST(EigenBelow, Errors) {
  auto v = well(40.0, 2.0, 1.0);
  EXPECT_EQ(kind_of([&] { solve_straight(v, 1.0, Grid2D::with_spacing(6.0, 1.0, 0.1), 2); }), ErrorKind::CapReached);
  EXPECT_EQ(kind_of([&] { solve_straight(v, 1.0, Grid2D::with_spacing(1.5, 1.0, 0.1)); }), ErrorKind::GridTooSmall);
  EXPECT_EQ(kind_of([&] { eigen_below(SymBandMatrix(3, 1), 0.0, 10); }), ErrorKind::InvalidParams);
}

TEST(Solve1D, Oracles) {
  EXPECT_TRUE(solve_1d([](double) { return 0.0; }, 1.0, 8.0, 400).empty());
  auto box = [](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; };
  auto ev = solve_1d(box, 1.0, 8.0, 16000);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_NEAR(ev[0], oracle::square_well_ground(1.0, 1.0), 1e-3);
  EXPECT_NEAR(ev[0], -0.4538, 1e-3);
  for (double V0 : {10.0, 40.0, 100.0}) {
    for (double factor : {1.0, 2.0}) {
      auto deep = solve_1d([V0](double x) { return std::abs(x) <= 1.0 ? V0 : 0.0; }, factor, 4.0, 4000);
      const double expect = 2.0 / pi * std::sqrt(factor * V0);
      EXPECT_NEAR(static_cast<double>(deep.size()), expect, 1.0 + 1e-9) << V0 << " " << factor;
    }
  }
}

TEST(CellSpectrum, AnalyticValues) {
  auto c1 = cell_spectrum(1.0, 65);
  EXPECT_NEAR(c1.lambda1, pi * pi / 4.0, 5e-3 * pi * pi / 4.0);
  EXPECT_NEAR(c1.lambda2, pi * pi + pi * pi / 4.0, 5e-3 * (pi * pi + pi * pi / 4.0));
  auto c2 = cell_spectrum(2.0, 65);
  EXPECT_NEAR(c2.gap(), pi * pi / 2.0, 5e-3 * pi * pi / 2.0);
  auto ct = cell_spectrum(std::sqrt(2.0), 65);
  // Both candidates for lambda2 coincide at d^2 = 2.
  EXPECT_NEAR(ct.lambda2, 9.0 * pi * pi / 8.0, 5e-3 * 9.0 * pi * pi / 8.0);
  EXPECT_NEAR(ct.gap(), pi * pi, 5e-3 * pi * pi);
}

TEST(GapCheck, TransverseModes) {
  const Grid2D g = Grid2D::with_spacing(4.0, 1.0, 0.05);
  const DiscreteForms flat = discretize(Potential{}, straight_strip(1.0), g);
  std::vector<double> u(g.dofs()), w(g.dofs());
  for (std::size_t i = 1; i < g.nx; ++i) {
    const double bump = std::exp(-g.x(i) * g.x(i));
    for (std::size_t j = 1; j <= g.ny; ++j) {
      u[g.index(i, j)] = bump * std::sin(3.0 * pi * g.y(j) / 2.0);
      w[g.index(i, j)] = bump * std::sin(pi * g.y(j) / 2.0);
    }
  }
  double ratio = 0.0;
  auto projected = u;
  project_out_ground_profile(g, projected);
  for (std::size_t p = 0; p < u.size(); ++p) EXPECT_NEAR(projected[p], u[p], 1e-12);
  EXPECT_TRUE(gap_inequality_holds(flat, u, 1.0, &ratio));
  EXPECT_LT(ratio, 0.6);
  project_out_ground_profile(g, w);
  for (double x : w) EXPECT_NEAR(x, 0.0, 1e-12);
  EXPECT_TRUE(gap_inequality_holds(flat, w, 1.0));
}

TEST(GapCheck, RandomProjectedFunctions) {
  auto report = projected_gap_check(Grid2D::with_spacing(4.0, 1.0, 0.05), 100, 42);
  EXPECT_EQ(report.passed, 100u);
  EXPECT_NEAR(report.c1, 1.0 / (pi * pi), 1e-15);
  EXPECT_GT(report.worst_ratio, 0.0);
}

TEST(Curved, ZeroCurvatureReproducesStraight) {
  auto v = potential_library("gaussian", {{"A", 1.0}, {"sigma", 0.7}}, 1.0).scaled(12.0);
  const Grid2D g = Grid2D::with_spacing(6.0, 1.0, 0.1);
  auto s = solve_straight(v, 1.0, g);
  auto c = solve_curved(v, straight_strip(1.0), g);
  ASSERT_EQ(s.count, c.count);
  for (std::size_t i = 0; i < s.count; ++i) {
    EXPECT_NEAR(c.eigenvalues_below[i], s.eigenvalues_below[i], 1e-10 * std::abs(s.eigenvalues_below[i]));
  }
  auto op = assemble_curved(v, straight_strip(1.0), g);
  auto a = assemble_straight(v, 1.0, g);
  auto r = op.reduced();
  for (std::size_t i = 0; i < a.size(); i += 7) EXPECT_NEAR(r(i, i), a(i, i), 1e-12 * std::abs(a(i, i)));
}

TEST(Curved, MassWeightsInSandwich) {
  auto geom = ellipticity_constants(0.5, CurvatureFunction::gaussian_bump(-0.8, 0.6, 3.0, 0.01));
  const Grid2D g = Grid2D::with_spacing(5.0, 0.5, 0.05);
  auto forms = discretize(Potential{}, geom, g);
  for (std::size_t p = 0; p < forms.mass.size(); ++p) {
    const double w = forms.mass[p] / forms.flat_mass[p];
    EXPECT_GE(w, geom.jacobian_lower() - 1e-14);
    EXPECT_LE(w, geom.jacobian_upper() + 1e-14);
  }
  EXPECT_EQ(kind_of([] {
              StripGeometry bad = straight_strip(1.0);
              bad.kplus_sup = 1.5;
              assemble_curved(Potential{}, bad, Grid2D{4.0, 1.0, 8, 2});
            }),
            ErrorKind::InvalidGeometry);
}

TEST(Curved, FormSandwichOnRandomVectors) {
  auto geom = ellipticity_constants(0.5, CurvatureFunction::sech_bump(0.5, 1.0, 3.0, 0.01));
  auto v = potential_library("gaussian", {{"sigma", 0.8}, {"y0", 0.25}}, 0.5).scaled(10.0);
  const Grid2D g = Grid2D::with_spacing(6.0, 0.5, 0.05);
  auto s = form_sandwich(v, geom, g);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<double> f(g.dofs());
  for (int t = 0; t < 20; ++t) {
    for (double& x : f) x = n(rng);
    const double lo = s.lower.quadratic_form(f), mid = s.curved.quadratic_form(f), hi = s.upper.quadratic_form(f);
    const double scale = std::abs(lo) + std::abs(mid) + std::abs(hi);
    EXPECT_LE(lo, mid + 1e-12 * scale);
    EXPECT_LE(mid, hi + 1e-12 * scale);
  }
  const double scale = std::max(s.upper.max_abs(), s.lower.max_abs());
  EXPECT_TRUE(is_positive_semidefinite(combine(s.curved, -1.0, s.lower), 1e-9, scale));
  EXPECT_TRUE(is_positive_semidefinite(combine(s.upper, -1.0, s.curved), 1e-9, scale));
}
