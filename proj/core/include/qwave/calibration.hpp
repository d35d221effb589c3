#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qwave/bounds.hpp"
#include "qwave/geometry.hpp"
#include "qwave/potential.hpp"
#include "qwave/solver.hpp"

namespace qwave {

struct FamilyMember {
  std::string label;
  Potential potential;
  StripGeometry geometry;
};

// Solver ground truth and bound ingredients for one member.
struct Observation {
  std::string label;
  std::size_t count = 0;
  double negative_sum = 0.0;
  BoundReport report;
};

enum class CalibrationTarget { Straight, Curved, LiebThirring };

struct CalibrationOptions {
  Grid2D grid;  // S, nx, ny; d is taken from each member
  std::size_t count_cap = 2000;
  std::size_t threads = 1;
  EigenOptions eigen;
  QuadratureOptions quadrature;
  // Candidate values for the two threshold constants.
  std::vector<double> threshold_grid{1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 1.0};
  // Values returned when no member constrains a constant.
  BoundConstants floors{1e-2, 1e-2, 1e-6, 1e-2, 1e-2, 1e-6, 1e-6};
};

using SolveFunction = std::function<SpectralResult(const FamilyMember&)>;

// Default ground truth: straight solver when the member has zero curvature, curved otherwise.
SolveFunction default_solver(const CalibrationOptions& options);

// Parallel map over the family. Throws Error(EmptyFamily).
std::vector<Observation> observe(const std::vector<FamilyMember>& family, const SolveFunction& solve,
                                 const CalibrationOptions& options);

// Fits the constants selected by `target` on top of `base`:
//   Straight / Curved: scan the threshold pair over threshold_grid^2, take
//     the smallest multiplier with 1 + mult * sum >= N_- on every member,
//     keep the pair giving the smallest multiplier (ties: larger thresholds);
//   LiebThirring: smallest C16 with C17 ||V||^2 >= negative_sum.
// The result is the same for any ordering of the observations.
BoundConstants fit_constants(const std::vector<Observation>& observations, CalibrationTarget target,
                             const BoundConstants& base, const CalibrationOptions& options);

BoundConstants calibrate(const std::vector<FamilyMember>& family, CalibrationTarget target,
                         const BoundConstants& base, const CalibrationOptions& options,
                         const SolveFunction& solve = {});

}  // namespace qwave
