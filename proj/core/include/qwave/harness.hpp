#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qwave/bounds.hpp"
#include "qwave/calibration.hpp"
#include "qwave/config.hpp"
#include "qwave/geometry.hpp"
#include "qwave/solver.hpp"

namespace qwave {

enum class RunMode { Solve, Bounds, Verify, Calibrate };

struct AlphaSummary {
  double alpha = 0.0;
  SpectralResult finest;           // finest refinement level
  double drift = 0.0;              // relative change of the lowest eigenvalue between the two finest levels
  bool trusted = false;            // drift below the gate
  double clr_rhs = 1.0;
  double lt_rhs = 0.0;
  bool clr_dominates = true;
  bool lt_dominates = true;
};

struct RunArtifact {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;
  std::string config_hash;
  BoundConstants constants;
  std::vector<AlphaSummary> alphas;

  bool dominance_ok() const;
};

// Geometry and support checks without solving. Throws Error.
GeometryReport validate_experiment(const ExperimentConfig& config);

// Spectral sweep over (alpha, refinement level), bounds, calibration and
// dominance checks depending on `mode`, written under `out_dir`.
// Files present on failure get a FAILED marker row before the error propagates.
RunArtifact run_experiment(const ExperimentConfig& config, RunMode mode, const std::filesystem::path& out_dir);

// Calibration family implied by a config: calibration.family if given,
// otherwise the configured potential at each alpha.
std::vector<FamilyMember> calibration_family(const ExperimentConfig& config);

}  // namespace qwave
