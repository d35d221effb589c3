#include "qwave/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "qwave/errors.hpp"

namespace qwave {

namespace {

std::size_t intervals_for(double length, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidParams, "curvature step must be positive");
  return static_cast<std::size_t>(std::max(1.0, std::round(length / step)));
}

}  // namespace

CurvatureFunction::CurvatureFunction(double s_start, double step, std::vector<double> samples) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidParams, "curvature grid must be strictly increasing");
  for (double k : samples) {
    if (!std::isfinite(k)) throw Error(ErrorKind::NonfiniteInput, "curvature sample is not finite");
  }
  samples_.start = s_start;
  samples_.step = step;
  samples_.values = std::move(samples);
}

CurvatureFunction CurvatureFunction::constant(double k, double s_min, double s_max, double step) {
  const std::size_t n = intervals_for(s_max - s_min, step);
  return {s_min, (s_max - s_min) / static_cast<double>(n), std::vector<double>(n + 1, k)};
}

CurvatureFunction CurvatureFunction::sech_bump(double amplitude, double width, double half_window,
                                               double step) {
  const std::size_t n = 2 * intervals_for(half_window, step);
  auto f = SampledFunction1D::sample(
      [&](double s) { return amplitude / std::cosh(s / width); }, -half_window, half_window, n);
  return {f.start, f.step, std::move(f.values)};
}

CurvatureFunction CurvatureFunction::gaussian_bump(double amplitude, double width, double half_window,
                                                   double step) {
  const std::size_t n = 2 * intervals_for(half_window, step);
  auto f = SampledFunction1D::sample(
      [&](double s) { return amplitude * std::exp(-0.5 * (s / width) * (s / width)); }, -half_window,
      half_window, n);
  return {f.start, f.step, std::move(f.values)};
}

CurvatureFunction CurvatureFunction::from_text(std::istream& in) {
  std::vector<double> s, k;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double a = 0.0, b = 0.0;
    if (!(row >> a)) continue;
    if (!(row >> b)) {
      throw Error(ErrorKind::ParseError, "curvature file line " + std::to_string(lineno) + ": expected two columns");
    }
    s.push_back(a);
    k.push_back(b);
  }
  if (s.size() < 2) throw Error(ErrorKind::ParseError, "curvature file needs at least two samples");
  const double step = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  if (!(step > 0.0)) throw Error(ErrorKind::ParseError, "curvature grid must be strictly increasing");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expected = s.front() + step * static_cast<double>(i);
    if (std::abs(s[i] - expected) > 1e-6 * step) {
      throw Error(ErrorKind::ParseError, "curvature grid is not uniform near s = " + std::to_string(s[i]));
    }
  }
  return {s.front(), step, std::move(k)};
}

CurvatureFunction CurvatureFunction::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open curvature file " + path);
  return from_text(in);
}

bool CurvatureFunction::is_zero() const {
  return std::all_of(samples_.values.begin(), samples_.values.end(), [](double k) { return k == 0.0; });
}

double CurvatureFunction::sup_positive() const {
  double sup = 0.0;
  for (double k : samples_.values) sup = std::max(sup, k);
  return sup;
}

double CurvatureFunction::sup_negative() const {
  double sup = 0.0;
  for (double k : samples_.values) sup = std::max(sup, -k);
  return sup;
}

double EmbeddedCurve::turning_angle() const {
  double total = 0.0;
  for (std::size_t i = 1; i < tangent.size(); ++i) {
    const Vec2& a = tangent[i - 1];
    const Vec2& b = tangent[i];
    total += std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
  }
  return total;
}

std::size_t EmbeddedCurve::origin_index() const {
  auto it = std::min_element(s.begin(), s.end(),
                             [](double a, double b) { return std::abs(a) < std::abs(b); });
  return static_cast<std::size_t>(it - s.begin());
}

EmbeddedCurve reconstruct_curve(const CurvatureFunction& curvature, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidParams, "reconstruction step must be positive");

  const double lo = std::min(0.0, curvature.window_start());
  const double hi = std::max(0.0, curvature.window_end());
  const auto i_lo = static_cast<long long>(std::floor(lo / step + 1e-9));
  const auto i_hi = static_cast<long long>(std::ceil(hi / step - 1e-9));
  const auto n = static_cast<std::size_t>(i_hi - i_lo + 1);
  const auto origin = static_cast<std::size_t>(-i_lo);

  // state = (x, y, Tx, Ty); N = (-Ty, Tx)
  using State = std::array<double, 4>;
  auto rhs = [&](double s, const State& q) {
    const double k = curvature(s);
    return State{q[2], q[3], -k * q[3], k * q[2]};
  };
  auto rk4 = [&](double s, const State& q, double h) {
    auto axpy = [](const State& a, double t, const State& b) {
      return State{a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2], a[3] + t * b[3]};
    };
    const State k1 = rhs(s, q);
    const State k2 = rhs(s + 0.5 * h, axpy(q, 0.5 * h, k1));
    const State k3 = rhs(s + 0.5 * h, axpy(q, 0.5 * h, k2));
    const State k4 = rhs(s + h, axpy(q, h, k3));
    State out{};
    for (std::size_t c = 0; c < 4; ++c) out[c] = q[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    return out;
  };

  std::vector<State> states(n);
  states[origin] = State{0.0, 0.0, 1.0, 0.0};
  auto s_at = [&](std::size_t i) { return step * (static_cast<double>(i) - static_cast<double>(origin)); };
  for (std::size_t i = origin; i + 1 < n; ++i) states[i + 1] = rk4(s_at(i), states[i], step);
  for (std::size_t i = origin; i > 0; --i) states[i - 1] = rk4(s_at(i), states[i], -step);

  EmbeddedCurve curve;
  curve.s.resize(n);
  curve.points.resize(n);
  curve.tangent.resize(n);
  curve.normal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State& q = states[i];
    curve.s[i] = s_at(i);
    curve.points[i] = {q[0], q[1]};
    curve.tangent[i] = {q[2], q[3]};
    curve.normal[i] = {-q[3], q[2]};
  }
  return curve;
}

StripGeometry ellipticity_constants(double d, CurvatureFunction curvature) {
  if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::InvalidGeometry, "strip width must be positive");
  StripGeometry g;
  g.d = d;
  g.kplus_sup = curvature.sup_positive();
  g.kminus_sup = curvature.sup_negative();
  if (!(d * g.kplus_sup < 1.0)) {
    throw Error(ErrorKind::InvalidGeometry,
                "d * sup k+ = " + std::to_string(d * g.kplus_sup) + " is not below 1");
  }
  g.curvature = std::move(curvature);

  const double lower = 1.0 - d * g.kplus_sup;
  const double upper = 1.0 + d * g.kminus_sup;
  const double pi = std::numbers::pi;
  g.m = std::min(1.0 / upper, lower);
  g.M = std::max(1.0 / lower, upper);
  g.l = std::sqrt(upper / g.m);
  g.beta = d / 2.0 - d / (2.0 * pi * g.l) * std::sin(pi * g.l);
  g.threshold_straight = pi * pi / (4.0 * d * d);
  g.lambda1_prime = pi * pi / (4.0 * g.m * d * d) * upper;
  g.lambda1_star = pi * pi / (4.0 * g.M * d * d) * lower;
  if (g.is_straight()) {
    g.m = g.M = g.l = 1.0;
    g.beta = d / 2.0;
    g.lambda1_prime = g.lambda1_star = g.threshold_straight;
  }
  return g;
}

double jacobian(const StripGeometry& geom, double s, double u) {
  if (!(u >= 0.0 && u <= geom.d)) {
    throw Error(ErrorKind::OutOfStrip, "u = " + std::to_string(u) + " outside [0, d]");
  }
  return 1.0 - u * geom.curvature(s);
}

std::string GeometryReport::summary() const {
  std::ostringstream os;
  os << "d = " << d << ", d*sup(k+) = " << d_kplus << (curvature_ok ? " < 1 (ok)" : " >= 1 (FAIL)")
     << "; sampled window [" << sampled_from << ", " << sampled_to
     << "], min non-adjacent midline distance = " << min_nonadjacent_distance
     << (embedding_ok ? " > d (ok)" : " <= d (SUSPECTED SELF-INTERSECTION)");
  return os.str();
}

GeometryReport inspect_geometry(double d, const CurvatureFunction& curvature, double step) {
  if (!(d > 0.0)) throw Error(ErrorKind::InvalidGeometry, "strip width must be positive");
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidParams, "sampling step must be positive");

  GeometryReport r;
  r.d = d;
  r.d_kplus = d * curvature.sup_positive();
  r.curvature_ok = r.d_kplus < 1.0;

  const double span = curvature.window_end() - curvature.window_start();
  const double margin = std::max(span, 4.0 * d);
  r.sampled_from = std::min(0.0, curvature.window_start()) - margin;
  r.sampled_to = std::max(0.0, curvature.window_end()) + margin;

  // Pad the window with explicit zero curvature so the straight continuation is sampled too.
  const auto pad_n = static_cast<std::size_t>(std::ceil((r.sampled_to - r.sampled_from) / step));
  std::vector<double> padded(pad_n + 1);
  const double pad_step = (r.sampled_to - r.sampled_from) / static_cast<double>(pad_n);
  for (std::size_t i = 0; i <= pad_n; ++i) padded[i] = curvature(r.sampled_from + pad_step * static_cast<double>(i));
  const EmbeddedCurve curve = reconstruct_curve(CurvatureFunction(r.sampled_from, pad_step, std::move(padded)), step);

  const double separation = 2.0 * d;
  double min_dist = std::numeric_limits<double>::infinity();
  const std::size_t n = curve.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (curve.s[j] - curve.s[i] <= separation) continue;
      const double dx = curve.points[i].x - curve.points[j].x;
      const double dy = curve.points[i].y - curve.points[j].y;
      min_dist = std::min(min_dist, std::hypot(dx, dy));
    }
  }
  r.min_nonadjacent_distance = min_dist;
  r.embedding_ok = min_dist > d;
  return r;
}

GeometryReport validate_geometry(double d, const CurvatureFunction& curvature, double step) {
  GeometryReport r = inspect_geometry(d, curvature, step);
  if (!r.curvature_ok) throw Error(ErrorKind::InvalidGeometry, r.summary());
  if (!r.embedding_ok) throw Error(ErrorKind::SelfIntersectionSuspected, r.summary());
  return r;
}

GeometryReport validate_geometry(const StripGeometry& geom, double step) {
  return validate_geometry(geom.d, geom.curvature, step);
}

}  // namespace qwave
