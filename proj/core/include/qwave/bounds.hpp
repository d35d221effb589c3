#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qwave/geometry.hpp"
#include "qwave/orlicz.hpp"
#include "qwave/potential.hpp"
#include "qwave/quadrature.hpp"

namespace qwave {

// Dyadic partition of [-2^K, 2^K]:
//   I_0 = [-1, 1],  I_k = [2^{k-1}, 2^k] (k > 0),  I_k = [-2^{|k|}, -2^{|k|-1}] (k < 0),
// and unit intervals J_j = (j, j + 1) for j_min <= j <= j_max.
struct DyadicScheme {
  int K = 0;
  int j_min = 0;
  int j_max = -1;

  // K is the smallest integer with 2^K >= S; the J range covers [x_lo, x_hi].
  static DyadicScheme build(double S, double x_lo, double x_hi);

  Interval dyadic(int k) const;
  Interval unit(int j) const { return {static_cast<double>(j), static_cast<double>(j) + 1.0}; }
  std::size_t dyadic_count() const { return static_cast<std::size_t>(2 * K + 1); }
  std::size_t unit_count() const { return j_max >= j_min ? static_cast<std::size_t>(j_max - j_min + 1) : 0; }
};

struct BoundConstants {
  double C4 = 1.0, C5 = 1.0, C6 = 1.0;     // straight CLR
  double C11 = 1.0, C12 = 1.0, C13 = 1.0;  // curved CLR
  double C16 = 1.0;                        // Lieb-Thirring

  // C17 = C16 (1 - d|k+|)^2 / M^2, recomputed from the geometry every time.
  double c17(const StripGeometry& geom) const;
  bool valid() const;
};

// C17 / C16 for a geometry.
double lt_geometry_factor(const StripGeometry& geom);

struct QuadratureOptions {
  std::size_t x_per_unit = 32;   // samples per unit length for effective potentials
  std::size_t min_x_intervals = 64;
  std::size_t y_intervals = 64;  // across the transverse support
  MixedNormOptions mixed;
};

// Vhat(x) = (2/d) int_0^d V(x, y) sin^2(pi y / 2d) dy, sampled over the x-support of V.
SampledFunction1D effective_potential_hat(const Potential& v, double d, const QuadratureOptions& q = {});

// V_*(s) = (l^2 / beta) int_0^d V(s, u) sin^2(pi l u / 2d) du.
SampledFunction1D effective_potential_star(const Potential& v, const StripGeometry& geom,
                                           const QuadratureOptions& q = {});

// beta_0 = int_{I_0} f, beta_k = int_{I_k} |x| f, indexed k + K.
std::vector<double> dyadic_coefficients(const SampledFunction1D& f, const DyadicScheme& scheme);

// ||V||_{L1(J_j, L_psi(0, d))}, indexed j - j_min.
std::vector<double> orlicz_coefficients(const Potential& v, double d, const DyadicScheme& scheme,
                                        const QuadratureOptions& q = {}, const NFunctionPair& pair = {});

// 1 + multiplier (sum_{dyadic > t1} sqrt(dyadic) + sum_{orlicz > t2} orlicz)
double clr_rhs(const std::vector<double>& dyadic, const std::vector<double>& orlicz, double dyadic_threshold,
               double orlicz_threshold, double multiplier);

enum class BoundMode { Straight, Curved };

// int_Omega V^2 ds du.
double potential_l2_squared(const Potential& v, double d, const QuadratureOptions& q = {});

// C17 ||V||^2_{L2}.
double lt_bound(const Potential& v, const StripGeometry& geom, double C16, const QuadratureOptions& q = {});

struct BoundReport {
  DyadicScheme scheme;
  std::vector<double> beta;   // by dyadic index
  std::vector<double> gamma;  // by dyadic index
  std::vector<double> C;      // by unit index
  std::vector<double> D;      // by unit index
  SampledFunction1D vhat;
  SampledFunction1D vstar;
  double l2_squared = 0.0;
  BoundConstants constants;
  double straight_rhs = 1.0;
  double curved_rhs = 1.0;
  double lt_rhs = 0.0;
  // Negative eigenvalue counts of the reduced one-dimensional operators
  // -h'' - 2 Vhat and -j'' - V_* on (-S, S).
  std::size_t reduced_count_straight = 0;
  std::size_t reduced_count_curved = 0;

  double clr(BoundMode mode) const { return mode == BoundMode::Straight ? straight_rhs : curved_rhs; }
  // Coefficient rows as (k, beta_k, C_k, gamma_k, D_k), k over the union of both index ranges.
  struct Row {
    int k;
    double beta, C, gamma, D;
  };
  std::vector<Row> rows() const;
};

BoundReport compute_bounds(const Potential& v, const StripGeometry& geom, const BoundConstants& constants,
                           double S, const QuadratureOptions& q = {}, bool reduced_counts = true);

// Re-evaluates the right-hand sides for new constants without recomputing coefficients.
void apply_constants(BoundReport& report, const StripGeometry& geom, const BoundConstants& constants);

}  // namespace qwave
