#include "qwave/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace qwave {

double SampledFunction1D::operator()(double xq) const {
  if (values.empty()) return 0.0;
  const double t = (xq - start) / step;
  const double n = static_cast<double>(values.size() - 1);
  if (t < -1e-12 || t > n + 1e-12) return 0.0;
  if (t <= 0.0) return values.front();
  if (t >= n) return values.back();
  const auto i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  if (i + 1 >= values.size()) return values.back();
  return (1.0 - frac) * values[i] + frac * values[i + 1];
}

double simpson(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  if (intervals == 1) return 0.5 * h * (v[0] + v[1]);

  auto simpson_even = [&](std::size_t first, std::size_t last) {
    // last - first is even and positive
    double s = v[first] + v[last];
    for (std::size_t i = first + 1; i < last; ++i) s += (((i - first) % 2) ? 4.0 : 2.0) * v[i];
    return s * h / 3.0;
  };

  if (intervals % 2 == 0) return simpson_even(0, intervals);
  double total = 0.0;
  if (intervals > 3) total += simpson_even(0, intervals - 3);
  const std::size_t k = intervals - 3;
  total += 3.0 * h / 8.0 * (v[k] + 3.0 * v[k + 1] + 3.0 * v[k + 2] + v[k + 3]);
  return total;
}

std::vector<double> simpson_weights(std::size_t points, double h) {
  std::vector<double> w(points, 0.0);
  if (points < 2) return w;
  const std::size_t intervals = points - 1;
  if (intervals == 1) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  auto even = [&](std::size_t first, std::size_t last) {
    w[first] += h / 3.0;
    w[last] += h / 3.0;
    for (std::size_t i = first + 1; i < last; ++i) w[i] += (((i - first) % 2) ? 4.0 : 2.0) * h / 3.0;
  };
  if (intervals % 2 == 0) {
    even(0, intervals);
    return w;
  }
  if (intervals > 3) even(0, intervals - 3);
  const std::size_t k = intervals - 3;
  w[k] += 3.0 * h / 8.0;
  w[k + 1] += 9.0 * h / 8.0;
  w[k + 2] += 9.0 * h / 8.0;
  w[k + 3] += 3.0 * h / 8.0;
  return w;
}

double integrate(const SampledFunction1D& f, double a, double b,
                 const std::function<double(double)>& weight) {
  if (f.values.size() < 2) return 0.0;
  a = std::max(a, f.start);
  b = std::min(b, f.end());
  if (b <= a) return 0.0;

  auto wf = [&](double x) { return (weight ? weight(x) : 1.0) * f(x); };
  const double h = f.step;
  const double snap = 1e-9;
  const double ta = (a - f.start) / h;
  const double tb = (b - f.start) / h;
  auto ia = static_cast<long long>(std::ceil(ta - snap));
  auto ib = static_cast<long long>(std::floor(tb + snap));
  const long long last = static_cast<long long>(f.values.size()) - 1;
  ia = std::clamp(ia, 0LL, last);
  ib = std::clamp(ib, 0LL, last);

  if (ib <= ia) return 0.5 * (b - a) * (wf(a) + wf(b));

  std::vector<double> v(static_cast<std::size_t>(ib - ia + 1));
  for (long long i = ia; i <= ib; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    v[static_cast<std::size_t>(i - ia)] = (weight ? weight(f.x(ui)) : 1.0) * f.values[ui];
  }
  double total = simpson(v, h);

  const double xa = f.x(static_cast<std::size_t>(ia));
  const double xb = f.x(static_cast<std::size_t>(ib));
  if (xa - a > snap * h) total += 0.5 * (xa - a) * (wf(a) + v.front());
  if (b - xb > snap * h) total += 0.5 * (b - xb) * (v.back() + wf(b));
  return total;
}

}  // namespace qwave
