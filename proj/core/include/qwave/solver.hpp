#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qwave/band_matrix.hpp"
#include "qwave/eigensolver.hpp"
#include "qwave/geometry.hpp"
#include "qwave/potential.hpp"

namespace qwave {

// Uniform grid on the truncated strip [-S, S] x [0, d]. Nodes
// x_i = -S + i hx (i = 0..nx), y_j = j hy (j = 0..ny). Dirichlet at
// i = 0, i = nx and j = 0; the Neumann row j = ny is an unknown.
struct Grid2D {
  double S = 8.0;
  double d = 1.0;
  std::size_t nx = 320;
  std::size_t ny = 20;

  double hx() const { return 2.0 * S / static_cast<double>(nx); }
  double hy() const { return d / static_cast<double>(ny); }
  double x(std::size_t i) const { return -S + hx() * static_cast<double>(i); }
  double y(std::size_t j) const { return hy() * static_cast<double>(j); }
  std::size_t dofs() const { return (nx - 1) * ny; }
  // Unknown index of interior node (i, j), 1 <= i < nx, 1 <= j <= ny.
  std::size_t index(std::size_t i, std::size_t j) const { return (i - 1) * ny + (j - 1); }

  // Spacing close to h in both directions (nx even, at least 2 cells across).
  static Grid2D with_spacing(double S, double d, double h);
  Grid2D refined(std::size_t factor) const { return {S, d, nx * factor, ny * factor}; }
};

// Assembled quadratic forms on a Grid2D. With a curved geometry the
// gradient form carries 1/(1 - uk) on d/ds and (1 - uk) on d/du, and
// `mass` carries (1 - uk); `flat_mass` is the plain nodal quadrature weight.
struct DiscreteForms {
  Grid2D grid;
  SymBandMatrix stiffness;
  std::vector<double> mass;
  std::vector<double> flat_mass;
  std::vector<double> potential;  // nodal V
};

// Throws Error(GridTooSmall) if the potential or curvature support is not inside (-S, S).
DiscreteForms discretize(const Potential& v, const StripGeometry& geom, const Grid2D& grid);

// Symmetric matrix of -Delta - V (five-point stencil, ghost-point Neumann
// row at y = d symmetrised by the nodal quadrature weights).
SymBandMatrix assemble_straight(const Potential& v, double d, const Grid2D& grid);

// Generalised problem A f = lambda B f for -Delta_Omega - V on the curved
// strip, from the quadratic form in (s, u) coordinates. B is diagonal.
struct GeneralizedOperator {
  SymBandMatrix stiffness;     // A: gradient form minus V-weighted mass
  std::vector<double> mass;    // B: nodal weights times (1 - uk)

  // B^{-1/2} A B^{-1/2}, same spectrum.
  SymBandMatrix reduced() const { return stiffness.congruence_by_inverse_sqrt(mass); }
};

// Throws Error(InvalidGeometry) or Error(GridTooSmall).
GeneralizedOperator assemble_curved(const Potential& v, const StripGeometry& geom, const Grid2D& grid);

struct SpectralResult {
  std::vector<double> eigenvalues_below;  // ascending
  std::size_t count = 0;                  // N_-
  double negative_sum = 0.0;              // sum of (threshold - lambda)
  double threshold = 0.0;
  double truncation = 0.0;                // S
  std::size_t nx = 0;
  std::size_t ny = 0;
  EigenStats stats;

  double lowest() const { return eigenvalues_below.empty() ? threshold : eigenvalues_below.front(); }
};

// Eigenvalues strictly below threshold * (1 - 1e-9). Throws
// Error(CapReached) when more than count_cap exist, and
// Error(EigensolverNonconvergence) from the eigensolver.
SpectralResult eigen_below(const SymBandMatrix& op, double threshold, std::size_t count_cap,
                           const EigenOptions& options = {});

// Bottom of the discrete essential spectrum: the lowest eigenvalue of the
// transverse three-point operator, (4 / hy^2) sin^2(pi hy / 4d).
double discrete_threshold(const Grid2D& grid);

SpectralResult solve_straight(const Potential& v, double d, const Grid2D& grid, std::size_t count_cap = 2000,
                              const EigenOptions& options = {});
SpectralResult solve_curved(const Potential& v, const StripGeometry& geom, const Grid2D& grid,
                            std::size_t count_cap = 2000, const EigenOptions& options = {});

// Negative eigenvalues of -h'' - factor * W on (-S, S) with Dirichlet ends
// and `intervals` cells, ascending.
std::vector<double> solve_1d(const std::function<double(double)>& w, double factor, double S,
                             std::size_t intervals, const EigenOptions& options = {});

// Two lowest eigenvalues of the Laplacian on (0, 1) x (0, d): Dirichlet at
// y = 0, Neumann at y = d and x = 0, 1, with n nodes per direction.
struct CellSpectrum {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap() const { return lambda2 - lambda1; }
};
CellSpectrum cell_spectrum(double d, std::size_t n, const EigenOptions& options = {});

// Random grid functions, made orthogonal to sin(pi y / 2d) column by
// column, tested against
//   int |u|^2 <= slack * C1 * (int |grad u|^2 - pi^2/(4 d^2) int |u|^2),
// C1 = max{1, d^2/2} / pi^2.
struct GapCheckReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  double c1 = 0.0;
  double worst_ratio = 0.0;  // max of int|u|^2 / (C1 * rhs form)
  bool all_passed() const { return passed == trials; }
};
double gap_constant(double d);
// Projects out sin(pi y / 2d) from every column of u in place.
void project_out_ground_profile(const Grid2D& grid, std::span<double> u);
GapCheckReport projected_gap_check(const Grid2D& grid, std::size_t trials, std::uint64_t seed = 1,
                                   double slack = 1.02);
// Check a single grid function (already projected by the caller).
bool gap_inequality_holds(const DiscreteForms& flat, std::span<const double> u, double slack, double* ratio = nullptr);

// Discrete versions of the two comparison forms around the curved form:
//   lower  = m (K0 - lambda1' B0) - (1 + d|k-|)/m  V B0
//   curved = K_w - pi^2/(4d^2) B_w - V B_w
//   upper  = M (K0 - lambda1* B0) - (1 - d|k+|)/M  V B0
// where K0, B0 are the unweighted gradient form and nodal weights.
struct FormSandwich {
  SymBandMatrix lower;
  SymBandMatrix curved;
  SymBandMatrix upper;
  std::vector<double> flat_mass;
};
FormSandwich form_sandwich(const Potential& v, const StripGeometry& geom, const Grid2D& grid);

// True if the smallest eigenvalue of a is >= -relative_slack * scale.
bool is_positive_semidefinite(const SymBandMatrix& a, double relative_slack, double scale);

}  // namespace qwave
