#include "qwave/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qwave/errors.hpp"

namespace qwave {

double NFunctionPair::phi(double s) const {
  const double a = std::abs(s);
  if (a < 1e-4) return a * a * (0.5 + a * (1.0 / 6.0 + a / 24.0));
  return std::expm1(a) - a;
}

double NFunctionPair::psi(double t) const {
  const double a = std::abs(t);
  if (a < 1e-4) return a * a * (0.5 + a * (-1.0 / 6.0 + a / 12.0));
  return (1.0 + a) * std::log1p(a) - a;
}

double NFunctionPair::phi_derivative(double s) const { return std::expm1(std::abs(s)); }

double NFunctionPair::phi_inverse(double v) const {
  if (!(v > 0.0)) return 0.0;
  if (v < 1e-12) return std::sqrt(2.0 * v);
  // Both starting values bound the root from above, so Newton on the convex
  // phi decreases monotonically onto it.
  const double r = std::sqrt(2.0 * v);
  double s = std::min(r, std::log1p(v + r));
  for (int it = 0; it < 100; ++it) {
    const double step = (phi(s) - v) / phi_derivative(s);
    s -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * s) break;
  }
  return s;
}

double NFunctionPair::psi_inverse(double v) const {
  if (!(v > 0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (psi(hi) < v) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

void require_finite(const SampledFunction1D& f) {
  for (double v : f.values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonfiniteInput, "sampled function has a non-finite value");
  }
}

double max_abs(const SampledFunction1D& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// Golden-section minimisation of a unimodal function on [a, b].
template <class F>
double golden_minimize(F&& f, double a, double b, double tol, double* fmin) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (fmin) *fmin = std::min({fc, fd, f(x)});
  return x;
}

}  // namespace

double amemiya_objective(const SampledFunction1D& f, double kappa, double measure, const NFunctionPair& pair) {
  std::vector<double> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pair.psi(f.values[i] / kappa);
  return kappa * (measure + simpson(v, f.step));
}

double avg_orlicz_norm(const SampledFunction1D& f, std::optional<double> measure, const NFunctionPair& pair) {
  require_finite(f);
  const double mu = measure.value_or(f.length());
  if (!(mu > 0.0)) throw Error(ErrorKind::InvalidParams, "interval measure must be positive");
  const double scale = max_abs(f);
  if (scale == 0.0 || f.values.size() < 2) return 0.0;

  // log(kappa) over [log 1e-12, log 1e12] relative to the sample scale; widen
  // the bracket if the minimiser lands on an end.
  double lo = std::log(scale) + std::log(1e-12);
  double hi = std::log(scale) + std::log(1e12);
  auto objective = [&](double log_kappa) { return amemiya_objective(f, std::exp(log_kappa), mu, pair); };
  double best = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double x = golden_minimize(objective, lo, hi, 1e-10, &best);
    const double width = hi - lo;
    if (x - lo < 1e-3 * width) {
      lo -= width;
    } else if (hi - x < 1e-3 * width) {
      hi += width;
    } else {
      break;
    }
  }
  return best;
}

double brute_force_avg_norm(const SampledFunction1D& f, const NFunctionPair& pair, const BruteForceOptions& options) {
  require_finite(f);
  const std::size_t n = f.values.size();
  if (n < 2) return 0.0;
  const std::vector<double> w = simpson_weights(n, f.step);
  const double mu = f.length();

  std::vector<std::size_t> active;
  double active_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (f.values[i] != 0.0 && w[i] > 0.0) {
      active.push_back(i);
      active_weight += w[i];
    }
  }
  if (active.empty()) return 0.0;

  // Feasible start on the constraint boundary: equal budget density everywhere.
  std::vector<double> g(n, 0.0);
  const double g0 = pair.phi_inverse(mu / active_weight);
  for (std::size_t i : active) g[i] = g0;

  auto ratio = [&](std::size_t i) {
    const double slope = pair.phi_derivative(g[i]);
    return slope > 0.0 ? std::abs(f.values[i]) / slope : std::numeric_limits<double>::infinity();
  };

  bool converged = false;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    std::size_t best = active.front(), worst = active.front();
    double rbest = -1.0, rworst = std::numeric_limits<double>::infinity();
    for (std::size_t i : active) {
      const double r = ratio(i);
      if (r > rbest) { rbest = r; best = i; }
      if (r < rworst) { rworst = r; worst = i; }
    }
    if (best == worst || rbest <= rworst * (1.0 + options.kkt_tolerance)) {
      converged = true;
      break;
    }
    // Exact pair step: keep the pair's budget and equalise |f| / phi'(g),
    // i.e. expm1(g_j) = (f_j / f_i) expm1(g_i); bisect on g_i.
    const double wi = w[best], wj = w[worst];
    const double fi = std::abs(f.values[best]), fj = std::abs(f.values[worst]);
    const double budget = wi * pair.phi(g[best]) + wj * pair.phi(g[worst]);
    auto partner = [&](double gi) { return std::log1p(fj / fi * std::expm1(gi)); };
    double lo = g[best], hi = pair.phi_inverse(budget / wi);
    for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
      const double mid = 0.5 * (lo + hi);
      (wi * pair.phi(mid) + wj * pair.phi(partner(mid)) > budget ? hi : lo) = mid;
    }
    g[best] = lo;
    g[worst] = partner(lo);
  }
  if (!converged) {
    throw Error(ErrorKind::ConvergenceFailure, "coordinate ascent did not reach the KKT tolerance");
  }

  double value = 0.0;
  for (std::size_t i : active) value += w[i] * std::abs(f.values[i]) * g[i];
  return value;
}

double luxemburg_norm(const SampledFunction1D& f, LuxemburgReading reading, const NFunctionPair& pair) {
  require_finite(f);
  if (max_abs(f) == 0.0 || f.values.size() < 2) return 0.0;
  auto modular = [&](double kappa) {
    std::vector<double> v(f.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = std::abs(f.values[i]) / kappa;
      v[i] = reading == LuxemburgReading::Standard ? pair.psi(a) : pair.phi(a);
    }
    return simpson(v, f.step);
  };
  // modular is decreasing in kappa; bisect on log kappa.
  double lo = std::log(max_abs(f)) - 1.0, hi = lo + 2.0;
  while (modular(std::exp(lo)) <= 1.0) lo -= 2.0;
  while (modular(std::exp(hi)) > 1.0) hi += 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (modular(std::exp(mid)) > 1.0 ? lo : hi) = mid;
  }
  return std::exp(hi);
}

double mixed_norm(const std::function<double(double, double)>& v, Interval x_range, Interval y_range,
                  double transverse_measure, const MixedNormOptions& options, const NFunctionPair& pair) {
  if (x_range.empty() || y_range.empty()) return 0.0;
  auto even_intervals = [](double length, std::size_t per_unit) {
    auto n = static_cast<std::size_t>(std::ceil(length * static_cast<double>(per_unit)));
    n = std::max<std::size_t>(n, 2);
    return n + (n % 2);
  };
  const std::size_t nx = even_intervals(x_range.length(), options.x_intervals);
  const std::size_t ny = std::max<std::size_t>(2, options.y_intervals + options.y_intervals % 2);

  std::vector<double> inner(nx + 1);
  const double hx = x_range.length() / static_cast<double>(nx);
  for (std::size_t i = 0; i <= nx; ++i) {
    const double x = x_range.lo + hx * static_cast<double>(i);
    auto slice = SampledFunction1D::sample([&](double y) { return v(x, y); }, y_range.lo, y_range.hi, ny);
    for (double s : slice.values) {
      if (!std::isfinite(s)) throw Error(ErrorKind::NonfiniteInput, "potential is not finite");
    }
    inner[i] = avg_orlicz_norm(slice, transverse_measure, pair);
  }
  return simpson(inner, hx);
}

}  // namespace qwave
