#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qwave/quadrature.hpp"

namespace qwave {

// Signed curvature k(s) of the reference curve, sampled on a uniform
// arclength grid over a finite window. Linear interpolation inside the
// window, identically zero outside it.
class CurvatureFunction {
 public:
  CurvatureFunction() = default;
  CurvatureFunction(double s_start, double step, std::vector<double> samples);

  static CurvatureFunction zero() { return {}; }
  static CurvatureFunction constant(double k, double s_min, double s_max, double step);
  static CurvatureFunction sech_bump(double amplitude, double width, double half_window, double step);
  static CurvatureFunction gaussian_bump(double amplitude, double width, double half_window, double step);

  // Two whitespace separated columns (s, k) per line; '#' starts a comment.
  // The s column must be uniform and strictly increasing.
  static CurvatureFunction from_text(std::istream& in);
  static CurvatureFunction load(const std::string& path);

  double operator()(double s) const { return samples_(s); }

  bool is_zero() const;
  double window_start() const { return samples_.start; }
  double window_end() const { return samples_.end(); }
  double step() const { return samples_.step; }
  const SampledFunction1D& samples() const { return samples_; }

  double sup_positive() const;  // sup max{0, k}
  double sup_negative() const;  // sup max{0, -k}

 private:
  SampledFunction1D samples_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Unit-speed curve with its Frenet frame, on the grid s_i = i * step.
struct EmbeddedCurve {
  std::vector<double> s;
  std::vector<Vec2> points;
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;

  // Unwrapped rotation of T from the first to the last sample.
  double turning_angle() const;
  // Index of s = 0 (where the curve is anchored at the origin).
  std::size_t origin_index() const;
};

// Integrates gamma' = T, T' = k N, N' = -k T with classic RK4 starting from
// gamma(0) = 0, T(0) = (1, 0), N = (-T_y, T_x). The grid covers the
// curvature window and the origin.
EmbeddedCurve reconstruct_curve(const CurvatureFunction& curvature, double step);

// Strip of width d over a reference curve, with every derived constant of
// the ellipticity sandwich 1 - d|k+| <= 1 - u k(s) <= 1 + d|k-|.
struct StripGeometry {
  double d = 1.0;
  CurvatureFunction curvature;
  double kplus_sup = 0.0;
  double kminus_sup = 0.0;
  double m = 1.0;       // min{1/(1 + d|k-|), 1 - d|k+|}
  double M = 1.0;       // max{1/(1 - d|k+|), 1 + d|k-|}
  double l = 1.0;       // sqrt((1 + d|k-|) / m)
  double beta = 0.5;    // int_0^d sin^2(pi l u / 2d) du
  double threshold_straight = 0.0;  // pi^2 / 4d^2
  double lambda1_prime = 0.0;       // pi^2 (1 + d|k-|) / (4 m d^2)
  double lambda1_star = 0.0;        // pi^2 (1 - d|k+|) / (4 M d^2)

  bool is_straight() const { return curvature.is_zero(); }
  double jacobian_lower() const { return 1.0 - d * kplus_sup; }
  double jacobian_upper() const { return 1.0 + d * kminus_sup; }
};

// Throws Error(InvalidGeometry) unless d > 0 and d * sup k+ < 1.
StripGeometry ellipticity_constants(double d, CurvatureFunction curvature);
inline StripGeometry straight_strip(double d) { return ellipticity_constants(d, CurvatureFunction::zero()); }

// sqrt(G) = 1 - u k(s). Throws Error(OutOfStrip) for u outside [0, d].
double jacobian(const StripGeometry& geom, double s, double u);

struct GeometryReport {
  double d = 0.0;
  double d_kplus = 0.0;
  bool curvature_ok = false;            // d * sup k+ < 1
  bool embedding_ok = false;            // sampled non-self-intersection
  double min_nonadjacent_distance = 0.0;
  double sampled_from = 0.0;
  double sampled_to = 0.0;

  bool ok() const { return curvature_ok && embedding_ok; }
  std::string summary() const;
};

// Never throws on a failed check; fills the report.
//
// The embedding test is a sampled heuristic: midline points gamma(s),
// gamma(t) with |s - t| > 2d must be more than d apart over a window that
// extends the curvature support on both sides. It can flag strips that
// only come close without crossing, and it cannot see crossings outside
// the sampled window.
GeometryReport inspect_geometry(double d, const CurvatureFunction& curvature, double step);

// As inspect_geometry, but throws Error(InvalidGeometry) or
// Error(SelfIntersectionSuspected) when a check fails.
GeometryReport validate_geometry(double d, const CurvatureFunction& curvature, double step);
GeometryReport validate_geometry(const StripGeometry& geom, double step);

}  // namespace qwave
