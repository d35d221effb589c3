#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "qwave/quadrature.hpp"

namespace qwave {

// The complementary N-function pair
//   phi(s) = e^|s| - 1 - |s|,   psi(t) = (1 + |t|) ln(1 + |t|) - |t|,
// Young conjugates of each other.
struct NFunctionPair {
  double phi(double s) const;
  double psi(double t) const;
  double phi_derivative(double s) const;  // for s >= 0: e^s - 1
  double phi_inverse(double v) const;     // s >= 0 with phi(s) = v
  double psi_inverse(double v) const;     // t >= 0 with psi(t) = v
};

inline double eval_phi(double s) { return NFunctionPair{}.phi(s); }
inline double eval_psi(double t) { return NFunctionPair{}.psi(t); }

// Average Orlicz norm
//   ||f||^(av) = sup{ |int f g| : int phi(g) <= mu(I) },
// evaluated through its convex dual inf_{kappa > 0} kappa (mu(I) + int psi(|f| / kappa)).
// `measure` overrides mu(I) when f is stored only on the part of I where it
// can be nonzero. Throws Error(NonfiniteInput).
double avg_orlicz_norm(const SampledFunction1D& f, std::optional<double> measure = std::nullopt,
                       const NFunctionPair& pair = {});

// Objective minimised by avg_orlicz_norm, exposed for convexity checks.
double amemiya_objective(const SampledFunction1D& f, double kappa, double measure,
                         const NFunctionPair& pair = {});

struct BruteForceOptions {
  double kkt_tolerance = 1e-8;
  std::size_t max_iterations = 200'000;
};

// Direct maximisation of sum w_i f_i g_i over the discretised constraint
// set sum w_i phi(g_i) <= mu, by pairwise coordinate ascent that moves
// constraint budget between the most and least profitable samples
// (exact two-point step).
// Meant as a test oracle for small grids. Throws Error(ConvergenceFailure).
double brute_force_avg_norm(const SampledFunction1D& f, const NFunctionPair& pair = {},
                            const BruteForceOptions& options = {});

enum class LuxemburgReading {
  Standard,  // inf{kappa : int psi(|f| / kappa) <= 1}
  AsWritten, // inf{kappa : int phi(|f| / kappa) <= 1}
};

double luxemburg_norm(const SampledFunction1D& f, LuxemburgReading reading = LuxemburgReading::Standard,
                      const NFunctionPair& pair = {});

struct MixedNormOptions {
  std::size_t x_intervals = 32;  // per unit length in x
  std::size_t y_intervals = 64;  // across the transverse support
};

// ||V||_{L1(J, L_psi(I))} = int_J ||V(x, .)||^(av)_{psi, I} dx for V >= 0.
// `x_range` and `y_range` are where V may be nonzero (already clipped to J
// and I); `transverse_measure` is |I|.
double mixed_norm(const std::function<double(double, double)>& v, Interval x_range, Interval y_range,
                  double transverse_measure, const MixedNormOptions& options = {},
                  const NFunctionPair& pair = {});

}  // namespace qwave
