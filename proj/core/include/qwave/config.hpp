#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwave/bounds.hpp"
#include "qwave/geometry.hpp"
#include "qwave/potential.hpp"

namespace qwave {

struct CurvatureSpec {
  // zero | constant {k, s_min, s_max} | sech_bump {amplitude, width, half_window}
  // | gaussian_bump {amplitude, width, half_window} | file (path)
  std::string family = "zero";
  ParamMap params;
  std::string path;
  double step = 0.01;

  bool operator==(const CurvatureSpec&) const = default;
};

struct PotentialSpec {
  std::string family = "zero";
  ParamMap params;
  std::vector<double> alpha{1.0};

  bool operator==(const PotentialSpec&) const = default;
};

struct GridSpec {
  double S = 8.0;
  std::size_t nx = 160;
  std::size_t ny = 16;
  std::size_t refinements = 1;  // levels; level r uses nx * 2^r, ny * 2^r

  bool operator==(const GridSpec&) const = default;
};

struct ExperimentConfig {
  double d = 1.0;
  CurvatureSpec curvature;
  PotentialSpec potential;
  GridSpec grid;
  std::optional<BoundConstants> constants;      // nullopt: calibrate
  std::vector<PotentialSpec> calibration_family;  // empty: the potential's own alpha sweep
  double convergence_gate = 1e-2;                 // relative drift of the lowest eigenvalue
  bool truncation_check = false;                  // also solve on [-2S, 2S]
  std::size_t count_cap = 2000;
  double tolerance = 1e-12;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string output = "qwave_out";

  bool operator==(const ExperimentConfig& o) const;
};

// JSON text to a validated config with defaults filled in. Throws
// Error(ParseError) with line or field diagnostics and Error(UnknownFamily).
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<string>");
ExperimentConfig load_config(const std::string& path);

std::string serialize_config(const ExperimentConfig& config);
// FNV-1a of the compact canonical serialisation without output and threads,
// as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

CurvatureFunction build_curvature(const CurvatureSpec& spec);
StripGeometry build_geometry(const ExperimentConfig& config);
// The configured potential with coupling alpha.
Potential build_potential(const PotentialSpec& spec, double d, double alpha);

}  // namespace qwave
