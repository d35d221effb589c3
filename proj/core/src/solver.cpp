#include "qwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qwave/errors.hpp"

namespace qwave {

namespace {

constexpr double kPi = std::numbers::pi;

// Tensor grid with Dirichlet at y = 0, Neumann at y = top, and either
// Dirichlet or Neumann at both x ends.
struct TensorLayout {
  double x0 = 0.0, hx = 1.0;
  std::size_t nx = 1;  // cells in x
  double hy = 1.0;
  std::size_t ny = 1;  // cells in y
  bool x_dirichlet = true;

  std::size_t first_col() const { return x_dirichlet ? 1 : 0; }
  std::size_t last_col() const { return x_dirichlet ? nx - 1 : nx; }
  std::size_t cols() const { return last_col() - first_col() + 1; }
  std::size_t dofs() const { return cols() * ny; }
  bool unknown_col(std::size_t i) const { return i >= first_col() && i <= last_col(); }
  std::size_t index(std::size_t i, std::size_t j) const { return (i - first_col()) * ny + (j - 1); }
  double x(std::size_t i) const { return x0 + hx * static_cast<double>(i); }
  double y(std::size_t j) const { return hy * static_cast<double>(j); }
  double x_weight(std::size_t i) const { return (!x_dirichlet && (i == 0 || i == nx)) ? 0.5 : 1.0; }
  double y_weight(std::size_t j) const { return j == ny ? 0.5 : 1.0; }
};

DiscreteForms build_forms(const TensorLayout& t, const std::function<double(double)>& curvature,
                          const Potential& v) {
  DiscreteForms f;
  const std::size_t n = t.dofs();
  f.stiffness = SymBandMatrix(n, t.ny);
  f.mass.assign(n, 0.0);
  f.flat_mass.assign(n, 0.0);
  f.potential.assign(n, 0.0);
  auto k = [&](double s) { return curvature ? curvature(s) : 0.0; };

  // d/ds edges along each row
  for (std::size_t j = 1; j <= t.ny; ++j) {
    const double yj = t.y(j);
    for (std::size_t i = 0; i < t.nx; ++i) {
      const bool a = t.unknown_col(i), b = t.unknown_col(i + 1);
      if (!a && !b) continue;
      const double jac = 1.0 - yj * k(t.x(i) + 0.5 * t.hx);
      const double c = t.y_weight(j) * t.hy / t.hx / jac;
      if (a) f.stiffness.add(t.index(i, j), t.index(i, j), c);
      if (b) f.stiffness.add(t.index(i + 1, j), t.index(i + 1, j), c);
      if (a && b) f.stiffness.add(t.index(i + 1, j), t.index(i, j), -c);
    }
  }
  // d/du edges along each column
  for (std::size_t i = t.first_col(); i <= t.last_col(); ++i) {
    const double xi = t.x(i);
    const double ki = k(xi);
    for (std::size_t j = 0; j < t.ny; ++j) {
      const double jac = 1.0 - (t.y(j) + 0.5 * t.hy) * ki;
      const double c = t.x_weight(i) * t.hx / t.hy * jac;
      f.stiffness.add(t.index(i, j + 1), t.index(i, j + 1), c);
      if (j >= 1) {
        f.stiffness.add(t.index(i, j), t.index(i, j), c);
        f.stiffness.add(t.index(i, j + 1), t.index(i, j), -c);
      }
    }
    for (std::size_t j = 1; j <= t.ny; ++j) {
      const std::size_t p = t.index(i, j);
      const double w = t.x_weight(i) * t.hx * t.y_weight(j) * t.hy;
      f.flat_mass[p] = w;
      f.mass[p] = w * (1.0 - t.y(j) * ki);
      const double vij = v(xi, t.y(j));
      if (!std::isfinite(vij)) throw Error(ErrorKind::NonfiniteInput, "potential is not finite on the grid");
      if (vij < 0.0) throw Error(ErrorKind::InvalidParams, "potential must be nonnegative");
      f.potential[p] = vij;
    }
  }
  return f;
}

void check_supports(const Potential& v, const CurvatureFunction& curvature, const Grid2D& grid) {
  if (!(grid.S > 0.0) || grid.nx < 2 || grid.ny < 1 || !(grid.d > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "grid needs S > 0, nx >= 2, ny >= 1");
  }
  if (!v.is_zero()) {
    const auto& box = v.support();
    if (!(box.x_lo > -grid.S && box.x_hi < grid.S)) {
      throw Error(ErrorKind::GridTooSmall, "potential support [" + std::to_string(box.x_lo) + ", " +
                                               std::to_string(box.x_hi) + "] not inside (-S, S), S = " +
                                               std::to_string(grid.S));
    }
  }
  const auto& k = curvature.samples();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k.values[i] != 0.0 && std::abs(k.x(i)) >= grid.S) {
      throw Error(ErrorKind::GridTooSmall, "curvature support reaches |s| = " + std::to_string(std::abs(k.x(i))) +
                                               " >= S = " + std::to_string(grid.S));
    }
  }
}

TensorLayout strip_layout(const Grid2D& grid) {
  return {-grid.S, grid.hx(), grid.nx, grid.hy(), grid.ny, true};
}

}  // namespace

Grid2D Grid2D::with_spacing(double S, double d, double h) {
  auto nx = static_cast<std::size_t>(std::ceil(2.0 * S / h));
  nx += nx % 2;
  const auto ny = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(d / h)));
  return {S, d, std::max<std::size_t>(nx, 4), ny};
}

DiscreteForms discretize(const Potential& v, const StripGeometry& geom, const Grid2D& grid) {
  if (std::abs(grid.d - geom.d) > 1e-12 * geom.d) throw Error(ErrorKind::InvalidParams, "grid width differs from strip width");
  check_supports(v, geom.curvature, grid);
  std::function<double(double)> k;
  if (!geom.is_straight()) k = [&geom](double s) { return geom.curvature(s); };
  DiscreteForms f = build_forms(strip_layout(grid), k, v);
  f.grid = grid;
  return f;
}

SymBandMatrix assemble_straight(const Potential& v, double d, const Grid2D& grid) {
  Grid2D g = grid;
  g.d = d;
  DiscreteForms f = discretize(v, straight_strip(d), g);
  std::vector<double> vm(f.mass.size());
  for (std::size_t p = 0; p < vm.size(); ++p) vm[p] = f.potential[p] * f.mass[p];
  f.stiffness.add_diagonal(vm, -1.0);
  return f.stiffness.congruence_by_inverse_sqrt(f.mass);
}

GeneralizedOperator assemble_curved(const Potential& v, const StripGeometry& geom, const Grid2D& grid) {
  if (!(geom.d * geom.kplus_sup < 1.0)) throw Error(ErrorKind::InvalidGeometry, "d * sup k+ must be below 1");
  DiscreteForms f = discretize(v, geom, grid);
  std::vector<double> vm(f.mass.size());
  for (std::size_t p = 0; p < vm.size(); ++p) vm[p] = f.potential[p] * f.mass[p];
  f.stiffness.add_diagonal(vm, -1.0);
  return {std::move(f.stiffness), std::move(f.mass)};
}

SpectralResult eigen_below(const SymBandMatrix& op, double threshold, std::size_t count_cap,
                           const EigenOptions& options) {
  if (!(threshold > 0.0)) throw Error(ErrorKind::InvalidParams, "threshold must be positive");
  SpectralResult r;
  r.threshold = threshold;
  const double cutoff = threshold - 1e-9 * std::abs(threshold);
  if (op.size() > options.dense_threshold) {
    const std::size_t n_below = count_below(op, cutoff);
    ++r.stats.factorizations;
    if (n_below > count_cap) {
      throw Error(ErrorKind::CapReached, std::to_string(n_below) + " eigenvalues below threshold exceed cap " +
                                             std::to_string(count_cap));
    }
  }
  r.eigenvalues_below =
      eigenvalues_in(op, -std::numeric_limits<double>::infinity(), cutoff, options, &r.stats);
  if (r.eigenvalues_below.size() > count_cap) {
    throw Error(ErrorKind::CapReached, std::to_string(r.eigenvalues_below.size()) +
                                           " eigenvalues below threshold exceed cap " + std::to_string(count_cap));
  }
  r.count = r.eigenvalues_below.size();
  for (double lambda : r.eigenvalues_below) r.negative_sum += threshold - lambda;
  return r;
}

double discrete_threshold(const Grid2D& grid) {
  const double hy = grid.hy();
  const double s = std::sin(kPi * hy / (4.0 * grid.d));
  return 4.0 / (hy * hy) * s * s;
}

SpectralResult solve_straight(const Potential& v, double d, const Grid2D& grid, std::size_t count_cap,
                              const EigenOptions& options) {
  Grid2D g = grid;
  g.d = d;
  SpectralResult r = eigen_below(assemble_straight(v, d, g), discrete_threshold(g), count_cap, options);
  r.truncation = g.S;
  r.nx = g.nx;
  r.ny = g.ny;
  return r;
}

SpectralResult solve_curved(const Potential& v, const StripGeometry& geom, const Grid2D& grid,
                            std::size_t count_cap, const EigenOptions& options) {
  Grid2D g = grid;
  g.d = geom.d;
  SpectralResult r = eigen_below(assemble_curved(v, geom, g).reduced(), discrete_threshold(g), count_cap, options);
  r.truncation = g.S;
  r.nx = g.nx;
  r.ny = g.ny;
  return r;
}

std::vector<double> solve_1d(const std::function<double(double)>& w, double factor, double S,
                             std::size_t intervals, const EigenOptions& options) {
  if (!(S > 0.0) || intervals < 2) throw Error(ErrorKind::InvalidParams, "solve_1d needs S > 0 and >= 2 cells");
  const double h = 2.0 * S / static_cast<double>(intervals);
  const std::size_t n = intervals - 1;
  SymBandMatrix a(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -S + h * static_cast<double>(i + 1);
    a.set(i, i, 2.0 / (h * h) - factor * w(x));
    if (i + 1 < n) a.set(i + 1, i, -1.0 / (h * h));
  }
  return eigenvalues_in(a, -std::numeric_limits<double>::infinity(), 0.0, options);
}

CellSpectrum cell_spectrum(double d, std::size_t n, const EigenOptions& options) {
  if (!(d > 0.0) || n < 3) throw Error(ErrorKind::InvalidParams, "cell_spectrum needs d > 0 and n >= 3");
  const TensorLayout t{0.0, 1.0 / static_cast<double>(n - 1), n - 1, d / static_cast<double>(n - 1), n - 1, false};
  DiscreteForms f = build_forms(t, {}, Potential{});
  const auto lowest = lowest_eigenvalues(f.stiffness.congruence_by_inverse_sqrt(f.mass), 2, options);
  return {lowest[0], lowest[1]};
}

double gap_constant(double d) { return std::max(1.0, d * d / 2.0) / (kPi * kPi); }

void project_out_ground_profile(const Grid2D& grid, std::span<double> u) {
  std::vector<double> profile(grid.ny + 1), weight(grid.ny + 1);
  double norm = 0.0;
  for (std::size_t j = 1; j <= grid.ny; ++j) {
    profile[j] = std::sin(kPi * grid.y(j) / (2.0 * grid.d));
    weight[j] = j == grid.ny ? 0.5 : 1.0;
    norm += weight[j] * profile[j] * profile[j];
  }
  for (std::size_t i = 1; i < grid.nx; ++i) {
    double c = 0.0;
    for (std::size_t j = 1; j <= grid.ny; ++j) c += weight[j] * profile[j] * u[grid.index(i, j)];
    c /= norm;
    for (std::size_t j = 1; j <= grid.ny; ++j) u[grid.index(i, j)] -= c * profile[j];
  }
}

bool gap_inequality_holds(const DiscreteForms& flat, std::span<const double> u, double slack, double* ratio) {
  const double d = flat.grid.d;
  double l2 = 0.0;
  for (std::size_t p = 0; p < u.size(); ++p) l2 += flat.flat_mass[p] * u[p] * u[p];
  const double rhs = flat.stiffness.quadratic_form(u) - kPi * kPi / (4.0 * d * d) * l2;
  const double c1 = gap_constant(d);
  if (ratio) *ratio = l2 == 0.0 ? 0.0 : l2 / (c1 * rhs);
  if (l2 == 0.0) return rhs >= -1e-14;
  return l2 <= slack * c1 * rhs;
}

GapCheckReport projected_gap_check(const Grid2D& grid, std::size_t trials, std::uint64_t seed, double slack) {
  const DiscreteForms flat = discretize(Potential{}, straight_strip(grid.d), grid);
  GapCheckReport report;
  report.trials = trials;
  report.c1 = gap_constant(grid.d);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.3, 3.0);
  std::vector<double> u(grid.dofs());
  for (std::size_t t = 0; t < trials; ++t) {
    std::fill(u.begin(), u.end(), 0.0);
    // Products of Gaussian bumps in x with transverse modes and monomials in y.
    for (int term = 0; term < 6; ++term) {
      const double center = 0.5 * grid.S * unit(rng);
      const double w = width(rng);
      const double amp = unit(rng);
      const int mode = term % 3;
      const bool monomial = term >= 3;
      for (std::size_t i = 1; i < grid.nx; ++i) {
        const double dx = (grid.x(i) - center) / w;
        const double bx = amp * std::exp(-0.5 * dx * dx);
        for (std::size_t j = 1; j <= grid.ny; ++j) {
          const double yy = grid.y(j) / grid.d;
          const double by = monomial ? std::pow(yy, mode + 1)
                                     : std::sin((2.0 * (mode + 1) - 1.0) * kPi * yy / 2.0 + (mode == 0 ? kPi * yy : 0.0));
          u[grid.index(i, j)] += bx * by;
        }
      }
    }
    project_out_ground_profile(grid, u);
    double ratio = 0.0;
    if (gap_inequality_holds(flat, u, slack, &ratio)) ++report.passed;
    report.worst_ratio = std::max(report.worst_ratio, ratio);
  }
  return report;
}

FormSandwich form_sandwich(const Potential& v, const StripGeometry& geom, const Grid2D& grid) {
  const DiscreteForms curved = discretize(v, geom, grid);
  const DiscreteForms flat = discretize(v, straight_strip(geom.d), grid);
  const double theta = kPi * kPi / (4.0 * geom.d * geom.d);
  const std::size_t n = curved.mass.size();

  FormSandwich s;
  s.flat_mass = flat.flat_mass;

  std::vector<double> diag(n);
  s.curved = curved.stiffness;
  for (std::size_t p = 0; p < n; ++p) diag[p] = -(theta + curved.potential[p]) * curved.mass[p];
  s.curved.add_diagonal(diag);

  const double upper_jac = geom.jacobian_upper();
  const double lower_jac = geom.jacobian_lower();

  s.lower = combine(SymBandMatrix(n, grid.ny), geom.m, flat.stiffness);
  for (std::size_t p = 0; p < n; ++p) {
    diag[p] = -geom.m * geom.lambda1_prime * flat.flat_mass[p] - upper_jac / geom.m * flat.potential[p] * flat.flat_mass[p];
  }
  s.lower.add_diagonal(diag);

  s.upper = combine(SymBandMatrix(n, grid.ny), geom.M, flat.stiffness);
  for (std::size_t p = 0; p < n; ++p) {
    diag[p] = -geom.M * geom.lambda1_star * flat.flat_mass[p] - lower_jac / geom.M * flat.potential[p] * flat.flat_mass[p];
  }
  s.upper.add_diagonal(diag);
  return s;
}

bool is_positive_semidefinite(const SymBandMatrix& a, double relative_slack, double scale) {
  return count_below(a, -relative_slack * scale) == 0;
}

}  // namespace qwave
