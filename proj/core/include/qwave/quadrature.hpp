#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qwave {

// Values of a real function on the uniform grid start + i*step, i = 0..n-1.
// Evaluation interpolates linearly and returns 0 outside [start, end()].
struct SampledFunction1D {
  double start = 0.0;
  double step = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t i) const { return start + step * static_cast<double>(i); }
  double end() const { return values.empty() ? start : x(values.size() - 1); }
  double length() const { return end() - start; }
  double operator()(double x) const;

  template <class F>
  static SampledFunction1D sample(F&& f, double a, double b, std::size_t intervals) {
    SampledFunction1D out;
    out.start = a;
    out.step = (b - a) / static_cast<double>(intervals);
    out.values.resize(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) out.values[i] = f(out.x(i));
    return out;
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool empty() const { return !(hi > lo); }
};

inline Interval intersect(Interval a, Interval b) {
  return {a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

// Composite Simpson on equally spaced samples. An odd number of intervals
// closes with the 3/8 rule on the last three; a single interval falls back
// to the trapezoid rule.
double simpson(std::span<const double> values, double step);

// Weights w with simpson(v, h) == sum_i w_i v_i.
std::vector<double> simpson_weights(std::size_t points, double step);

template <class F>
double simpson(F&& f, double a, double b, std::size_t intervals) {
  if (intervals == 0 || b <= a) return 0.0;
  std::vector<double> v(intervals + 1);
  const double h = (b - a) / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) v[i] = f(a + h * static_cast<double>(i));
  return simpson(v, h);
}

// Integral of weight(x) * f(x) over [a, b] clipped to the sample domain.
// Grid-aligned portions use Simpson; partial cells at unaligned endpoints
// use the trapezoid rule on interpolated values.
double integrate(const SampledFunction1D& f, double a, double b,
                 const std::function<double(double)>& weight = {});

}  // namespace qwave
