#include "qwave/eigensolver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "qwave/errors.hpp"

namespace qwave {

std::size_t count_below(const SymBandMatrix& a, double x) { return BandLDLT(a, x).negative_count(); }

std::vector<double> dense_eigenvalues(const SymBandMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverNonconvergence, "dense symmetric eigensolver failed");
  }
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class Slicer {
 public:
  Slicer(const SymBandMatrix& a, const EigenOptions& options, EigenStats& stats)
      : a_(a), options_(options), stats_(stats), rng_(options.seed), x_(a.size()), ax_(a.size()) {
    lower_ = a.gershgorin_lower();
    upper_ = a.gershgorin_upper();
    scale_ = std::max({std::abs(lower_), std::abs(upper_), 1e-300});
    tol_ = options.tolerance * scale_;
    lower_ -= tol_;
    upper_ += tol_;
  }

  double lower() const { return lower_; }
  double upper() const { return upper_; }

  std::size_t count(double x) {
    ++stats_.factorizations;
    return BandLDLT(a_, x).negative_count();
  }

  // Eigenvalues of the half-open bracket [lo, hi) holding hi_count - lo_count
  // of them, ascending. Stops once `limit` values are known.
  void slice(double lo, std::size_t lo_count, double hi, std::size_t hi_count, std::size_t limit,
             std::vector<double>& out) {
    const std::size_t budget_start = stats_.factorizations;
    const std::size_t expected = hi_count - lo_count;
    const std::size_t budget = options_.max_factorizations_per_eigenvalue * (expected + 1);

    struct Bracket {
      double lo, hi;
      std::size_t clo, chi;
    };
    std::vector<Bracket> stack{{lo, hi, lo_count, hi_count}};
    while (!stack.empty() && out.size() < limit) {
      if (stats_.factorizations - budget_start > budget) {
        throw Error(ErrorKind::EigensolverNonconvergence,
                    "spectrum slicing exceeded its factorization budget with " + std::to_string(out.size()) +
                        " of " + std::to_string(expected) + " eigenvalues resolved");
      }
      Bracket b = stack.back();
      stack.pop_back();
      const std::size_t m = b.chi - b.clo;
      if (m == 0) continue;
      if (b.hi - b.lo <= tol_) {
        for (std::size_t i = 0; i < m && out.size() < limit; ++i) out.push_back(0.5 * (b.lo + b.hi));
        continue;
      }
      if (m == 1) {
        if (auto value = polish(b.lo, b.hi)) {
          out.push_back(*value);
          continue;
        }
      }
      const double mid = 0.5 * (b.lo + b.hi);
      const std::size_t cmid = std::clamp(count(mid), b.clo, b.chi);
      stack.push_back({mid, b.hi, cmid, b.chi});
      stack.push_back({b.lo, mid, b.clo, cmid});
    }
  }

 private:
  void normalize(std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }

  // Shift-invert Rayleigh iteration for the single eigenvalue in [lo, hi).
  std::optional<double> polish(double lo, double hi) {
    std::normal_distribution<double> normal;
    for (double& v : x_) v = normal(rng_);
    normalize(x_);

    double sigma = 0.5 * (lo + hi);
    for (int attempt = 0; attempt < 8; ++attempt) {
      BandLDLT factor(a_, sigma);
      ++stats_.factorizations;
      const int sweeps = attempt == 0 ? 3 : 1;
      for (int s = 0; s < sweeps; ++s) {
        factor.solve(x_);
        normalize(x_);
      }
      a_.multiply(x_, ax_);
      double rho = 0.0;
      for (std::size_t i = 0; i < x_.size(); ++i) rho += x_[i] * ax_[i];
      double r2 = 0.0;
      for (std::size_t i = 0; i < x_.size(); ++i) r2 += (ax_[i] - rho * x_[i]) * (ax_[i] - rho * x_[i]);
      const double r = std::sqrt(r2);
      // Some eigenvalue lies in [rho - r, rho + r]; inside the bracket it is ours.
      if (r <= tol_ && rho - r >= lo && rho + r < hi) {
        stats_.max_residual = std::max(stats_.max_residual, r);
        return rho;
      }
      if (!(rho > lo && rho < hi)) return std::nullopt;
      sigma = rho;
    }
    return std::nullopt;
  }

  const SymBandMatrix& a_;
  const EigenOptions& options_;
  EigenStats& stats_;
  std::mt19937_64 rng_;
  std::vector<double> x_, ax_;
  double lower_ = 0.0, upper_ = 0.0, scale_ = 1.0, tol_ = 0.0;
};

}  // namespace

std::vector<double> eigenvalues_in(const SymBandMatrix& a, double lower, double upper, const EigenOptions& options,
                                   EigenStats* stats) {
  EigenStats local;
  EigenStats& st = stats ? *stats : local;
  std::vector<double> out;
  if (a.size() == 0 || !(upper > lower)) return out;

  if (a.size() <= options.dense_threshold) {
    st.dense = true;
    for (double v : dense_eigenvalues(a)) {
      if (v >= lower && v < upper) out.push_back(v);
    }
    return out;
  }

  Slicer slicer(a, options, st);
  const double lo = std::max(lower, slicer.lower());
  const double hi = std::min(upper, slicer.upper());
  if (!(hi > lo)) return out;
  const std::size_t clo = lo <= slicer.lower() ? 0 : slicer.count(lo);
  const std::size_t chi = hi >= slicer.upper() ? a.size() : slicer.count(hi);
  if (chi <= clo) return out;
  slicer.slice(lo, clo, hi, chi, chi - clo, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> lowest_eigenvalues(const SymBandMatrix& a, std::size_t k, const EigenOptions& options,
                                       EigenStats* stats) {
  EigenStats local;
  EigenStats& st = stats ? *stats : local;
  k = std::min(k, a.size());
  if (k == 0) return {};

  if (a.size() <= options.dense_threshold) {
    st.dense = true;
    auto all = dense_eigenvalues(a);
    all.resize(k);
    return all;
  }

  Slicer slicer(a, options, st);
  const double lo = slicer.lower();
  double width = (slicer.upper() - lo) * std::ldexp(1.0, -16);
  double hi = lo + width;
  std::size_t chi = slicer.count(hi);
  while (chi < k) {
    width *= 4.0;
    hi = lo + width;
    if (hi >= slicer.upper()) {
      hi = slicer.upper();
      chi = a.size();
      break;
    }
    chi = slicer.count(hi);
  }
  std::vector<double> out;
  slicer.slice(lo, 0, hi, chi, k, out);
  std::sort(out.begin(), out.end());
  out.resize(k);
  return out;
}

}  // namespace qwave
