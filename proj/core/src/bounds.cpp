#include "qwave/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwave/errors.hpp"
#include "qwave/solver.hpp"

namespace qwave {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t even_at_least(std::size_t n) { return std::max<std::size_t>(2, n + n % 2); }

Interval x_support(const Potential& v) { return {v.support().x_lo, v.support().x_hi}; }

Interval y_support(const Potential& v, double d) {
  return intersect({v.support().y_lo, v.support().y_hi}, {0.0, d});
}

SampledFunction1D transverse_average(const Potential& v, double d, double factor, double l,
                                     const QuadratureOptions& q) {
  if (v.is_zero()) return SampledFunction1D{0.0, 1.0, {0.0}};
  const Interval xs = x_support(v);
  const Interval ys = y_support(v, d);
  if (xs.empty() || ys.empty()) return SampledFunction1D{0.0, 1.0, {0.0}};
  const auto nx = even_at_least(std::max(q.min_x_intervals,
                                         static_cast<std::size_t>(std::ceil(xs.length() * static_cast<double>(q.x_per_unit)))));
  const std::size_t ny = even_at_least(q.y_intervals);
  return SampledFunction1D::sample(
      [&](double x) {
        return factor * simpson(
                            [&](double y) {
                              const double s = std::sin(kPi * l * y / (2.0 * d));
                              return v(x, y) * s * s;
                            },
                            ys.lo, ys.hi, ny);
      },
      xs.lo, xs.hi, nx);
}

}  // namespace

DyadicScheme DyadicScheme::build(double S, double x_lo, double x_hi) {
  if (!(S > 0.0)) throw Error(ErrorKind::InvalidParams, "dyadic scheme needs S > 0");
  DyadicScheme s;
  while (std::ldexp(1.0, s.K) < S) ++s.K;
  if (x_hi > x_lo) {
    s.j_min = static_cast<int>(std::floor(x_lo));
    s.j_max = static_cast<int>(std::ceil(x_hi)) - 1;
  }
  return s;
}

Interval DyadicScheme::dyadic(int k) const {
  if (k == 0) return {-1.0, 1.0};
  const int a = std::abs(k);
  if (k > 0) return {std::ldexp(1.0, a - 1), std::ldexp(1.0, a)};
  return {-std::ldexp(1.0, a), -std::ldexp(1.0, a - 1)};
}

double lt_geometry_factor(const StripGeometry& geom) {
  const double j = 1.0 - geom.d * geom.kplus_sup;
  return j * j / (geom.M * geom.M);
}

double BoundConstants::c17(const StripGeometry& geom) const { return C16 * lt_geometry_factor(geom); }

bool BoundConstants::valid() const {
  for (double c : {C4, C5, C6, C11, C12, C13, C16}) {
    if (!(c > 0.0) || !std::isfinite(c)) return false;
  }
  return true;
}

SampledFunction1D effective_potential_hat(const Potential& v, double d, const QuadratureOptions& q) {
  if (!(d > 0.0)) throw Error(ErrorKind::InvalidParams, "d must be positive");
  return transverse_average(v, d, 2.0 / d, 1.0, q);
}

SampledFunction1D effective_potential_star(const Potential& v, const StripGeometry& geom,
                                           const QuadratureOptions& q) {
  if (!(geom.d > 0.0) || !(geom.beta > 0.0)) throw Error(ErrorKind::InvalidGeometry, "invalid strip constants");
  return transverse_average(v, geom.d, geom.l * geom.l / geom.beta, geom.l, q);
}

std::vector<double> dyadic_coefficients(const SampledFunction1D& f, const DyadicScheme& scheme) {
  std::vector<double> out(scheme.dyadic_count(), 0.0);
  const Interval domain{f.start, f.end()};
  for (int k = -scheme.K; k <= scheme.K; ++k) {
    const Interval part = intersect(scheme.dyadic(k), domain);
    double value = 0.0;
    if (!part.empty()) {
      value = k == 0 ? integrate(f, part.lo, part.hi)
                     : integrate(f, part.lo, part.hi, [](double x) { return std::abs(x); });
    }
    out[static_cast<std::size_t>(k + scheme.K)] = std::max(0.0, value);
  }
  return out;
}

std::vector<double> orlicz_coefficients(const Potential& v, double d, const DyadicScheme& scheme,
                                        const QuadratureOptions& q, const NFunctionPair& pair) {
  std::vector<double> out(scheme.unit_count(), 0.0);
  if (v.is_zero()) return out;
  const Interval ys = y_support(v, d);
  if (ys.empty()) return out;
  auto field = [&v](double x, double y) { return v(x, y); };
  for (int j = scheme.j_min; j <= scheme.j_max; ++j) {
    const Interval xs = intersect(scheme.unit(j), x_support(v));
    if (xs.empty()) continue;
    out[static_cast<std::size_t>(j - scheme.j_min)] = mixed_norm(field, xs, ys, d, q.mixed, pair);
  }
  return out;
}

double clr_rhs(const std::vector<double>& dyadic, const std::vector<double>& orlicz, double dyadic_threshold,
               double orlicz_threshold, double multiplier) {
  double sum = 0.0;
  for (double b : dyadic) {
    if (b > dyadic_threshold) sum += std::sqrt(b);
  }
  for (double c : orlicz) {
    if (c > orlicz_threshold) sum += c;
  }
  return 1.0 + multiplier * sum;
}

double potential_l2_squared(const Potential& v, double d, const QuadratureOptions& q) {
  if (v.is_zero()) return 0.0;
  const Interval xs = x_support(v);
  const Interval ys = y_support(v, d);
  if (xs.empty() || ys.empty()) return 0.0;
  const auto nx = even_at_least(std::max(q.min_x_intervals,
                                         static_cast<std::size_t>(std::ceil(xs.length() * static_cast<double>(q.x_per_unit)))));
  const std::size_t ny = even_at_least(q.y_intervals);
  return simpson(
      [&](double x) {
        return simpson(
            [&](double y) {
              const double value = v(x, y);
              return value * value;
            },
            ys.lo, ys.hi, ny);
      },
      xs.lo, xs.hi, nx);
}

double lt_bound(const Potential& v, const StripGeometry& geom, double C16, const QuadratureOptions& q) {
  BoundConstants c;
  c.C16 = C16;
  return c.c17(geom) * potential_l2_squared(v, geom.d, q);
}

std::vector<BoundReport::Row> BoundReport::rows() const {
  int lo = -scheme.K, hi = scheme.K;
  if (scheme.unit_count() > 0) {
    lo = std::min(lo, scheme.j_min);
    hi = std::max(hi, scheme.j_max);
  }
  std::vector<Row> out;
  for (int k = lo; k <= hi; ++k) {
    Row r{k, 0.0, 0.0, 0.0, 0.0};
    if (k >= -scheme.K && k <= scheme.K) {
      const auto i = static_cast<std::size_t>(k + scheme.K);
      r.beta = beta[i];
      r.gamma = gamma[i];
    }
    if (scheme.unit_count() > 0 && k >= scheme.j_min && k <= scheme.j_max) {
      const auto i = static_cast<std::size_t>(k - scheme.j_min);
      r.C = C[i];
      r.D = D[i];
    }
    out.push_back(r);
  }
  return out;
}

void apply_constants(BoundReport& report, const StripGeometry& geom, const BoundConstants& constants) {
  if (!constants.valid()) throw Error(ErrorKind::InvalidParams, "bound constants must be positive and finite");
  report.constants = constants;
  report.straight_rhs = clr_rhs(report.beta, report.C, constants.C4, constants.C5, constants.C6);
  report.curved_rhs = clr_rhs(report.gamma, report.D, constants.C11, constants.C12, constants.C13);
  report.lt_rhs = constants.c17(geom) * report.l2_squared;
}

BoundReport compute_bounds(const Potential& v, const StripGeometry& geom, const BoundConstants& constants,
                           double S, const QuadratureOptions& q, bool reduced_counts) {
  BoundReport r;
  const Interval xs = v.is_zero() ? Interval{} : x_support(v);
  r.scheme = DyadicScheme::build(S, xs.lo, xs.hi);
  r.vhat = effective_potential_hat(v, geom.d, q);
  r.vstar = effective_potential_star(v, geom, q);
  r.beta = dyadic_coefficients(r.vhat, r.scheme);
  r.gamma = dyadic_coefficients(r.vstar, r.scheme);
  r.C = orlicz_coefficients(v, geom.d, r.scheme, q);
  r.D = r.C;
  r.l2_squared = potential_l2_squared(v, geom.d, q);
  apply_constants(r, geom, constants);

  if (reduced_counts && !v.is_zero()) {
    const auto cells = even_at_least(static_cast<std::size_t>(std::ceil(2.0 * S * static_cast<double>(q.x_per_unit))));
    const auto& vh = r.vhat;
    const auto& vs = r.vstar;
    r.reduced_count_straight = solve_1d([&vh](double x) { return vh(x); }, 2.0, S, cells).size();
    r.reduced_count_curved = solve_1d([&vs](double x) { return vs(x); }, 1.0, S, cells).size();
  }
  return r;
}

}  // namespace qwave
