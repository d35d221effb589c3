#include "qwave/calibration.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "qwave/errors.hpp"
#include "qwave/parallel.hpp"

namespace qwave {

SolveFunction default_solver(const CalibrationOptions& options) {
  return [options](const FamilyMember& m) {
    Grid2D g = options.grid;
    g.d = m.geometry.d;
    if (m.geometry.is_straight()) return solve_straight(m.potential, m.geometry.d, g, options.count_cap, options.eigen);
    return solve_curved(m.potential, m.geometry, g, options.count_cap, options.eigen);
  };
}

std::vector<Observation> observe(const std::vector<FamilyMember>& family, const SolveFunction& solve,
                                 const CalibrationOptions& options) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "calibration family is empty");
  const SolveFunction run = solve ? solve : default_solver(options);
  return parallel_map<Observation>(family.size(), options.threads, [&](std::size_t i) {
    const FamilyMember& m = family[i];
    Observation o;
    o.label = m.label;
    const SpectralResult r = run(m);
    o.count = r.count;
    o.negative_sum = r.negative_sum;
    o.report = compute_bounds(m.potential, m.geometry, BoundConstants{}, options.grid.S, options.quadrature, false);
    return o;
  });
}

namespace {

struct ClrFit {
  double t1, t2, multiplier;
};

ClrFit fit_clr(const std::vector<Observation>& obs, bool curved, const CalibrationOptions& options) {
  const double inf = std::numeric_limits<double>::infinity();
  std::optional<ClrFit> best;
  bool constrained = false;
  for (double t1 : options.threshold_grid) {
    for (double t2 : options.threshold_grid) {
      double mult = 0.0;
      for (const Observation& o : obs) {
        if (o.count <= 1) continue;
        constrained = true;
        const auto& dyadic = curved ? o.report.gamma : o.report.beta;
        const auto& orlicz = curved ? o.report.D : o.report.C;
        const double sum = clr_rhs(dyadic, orlicz, t1, t2, 1.0) - 1.0;
        mult = std::max(mult, sum > 0.0 ? static_cast<double>(o.count - 1) / sum : inf);
      }
      const bool better = !best || mult < best->multiplier ||
                          (mult == best->multiplier && (t1 > best->t1 || (t1 == best->t1 && t2 > best->t2)));
      if (better) best = ClrFit{t1, t2, mult};
    }
  }
  if (!constrained || !best) return {0.0, 0.0, 0.0};
  if (!std::isfinite(best->multiplier)) {
    throw Error(ErrorKind::ConvergenceFailure, "no threshold pair bounds the observed counts");
  }
  return *best;
}

}  // namespace

BoundConstants fit_constants(const std::vector<Observation>& observations, CalibrationTarget target,
                             const BoundConstants& base, const CalibrationOptions& options) {
  if (observations.empty()) throw Error(ErrorKind::EmptyFamily, "calibration family is empty");
  BoundConstants c = base;
  const BoundConstants& f = options.floors;
  switch (target) {
    case CalibrationTarget::Straight: {
      const ClrFit fit = fit_clr(observations, false, options);
      if (fit.multiplier == 0.0) {
        c.C4 = f.C4, c.C5 = f.C5, c.C6 = f.C6;
      } else {
        c.C4 = fit.t1, c.C5 = fit.t2, c.C6 = std::max(fit.multiplier, f.C6);
      }
      break;
    }
    case CalibrationTarget::Curved: {
      const ClrFit fit = fit_clr(observations, true, options);
      if (fit.multiplier == 0.0) {
        c.C11 = f.C11, c.C12 = f.C12, c.C13 = f.C13;
      } else {
        c.C11 = fit.t1, c.C12 = fit.t2, c.C13 = std::max(fit.multiplier, f.C13);
      }
      break;
    }
    case CalibrationTarget::LiebThirring: {
      double c16 = 0.0;
      for (const Observation& o : observations) {
        if (o.negative_sum <= 0.0) continue;
        // lt_rhs was evaluated with C16 = 1, so it equals the geometry factor times ||V||^2.
        const double unit = o.report.lt_rhs;
        if (!(unit > 0.0)) throw Error(ErrorKind::ConvergenceFailure, "negative sum observed with zero L2 norm");
        c16 = std::max(c16, o.negative_sum / unit);
      }
      c.C16 = std::max(c16, f.C16);
      break;
    }
  }
  return c;
}

BoundConstants calibrate(const std::vector<FamilyMember>& family, CalibrationTarget target,
                         const BoundConstants& base, const CalibrationOptions& options, const SolveFunction& solve) {
  return fit_constants(observe(family, solve, options), target, base, options);
}

}  // namespace qwave
