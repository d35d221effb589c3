#pragma once

// Independent reference computations for the tests. Nothing here calls the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// s > 0 with e^s - 1 - s = v.
inline double phi_inverse(double v) {
  return bisect([v](double s) { return std::exp(s) - 1.0 - s - v; }, 0.0, 50.0);
}

// Ground state of -h'' - V0 1_{[-a,a]}: even state, q tan(q a) = kappa with q^2 + kappa^2 = V0.
inline double square_well_ground(double V0, double a) {
  const double top = std::min(std::sqrt(V0), pi / (2.0 * a)) * (1.0 - 1e-12);
  const double q = bisect(
      [&](double q) { return q * std::tan(q * a) - std::sqrt(std::max(0.0, V0 - q * q)); }, 1e-12, top);
  return -(V0 - q * q);
}

// Number of bound states of the same well: ceil(2 a sqrt(V0) / pi).
inline int square_well_count(double V0, double a) {
  return static_cast<int>(std::ceil(2.0 * a * std::sqrt(V0) / pi));
}

// Dense symmetric eigenvalues by cyclic Jacobi rotations, ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Trapezoid rule with many panels, used where a slow but obvious answer is enough.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n = 200000) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

}  // namespace oracle
