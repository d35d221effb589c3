#include "qwave/band_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qwave {

SymBandMatrix::SymBandMatrix(std::size_t n, std::size_t bandwidth)
    : n_(n), bw_(bandwidth), data_(n * (bandwidth + 1), 0.0) {}

double SymBandMatrix::operator()(std::size_t i, std::size_t j) const {
  if (j > i) std::swap(i, j);
  if (i - j > bw_) return 0.0;
  return data_[index(i, j)];
}

void SymBandMatrix::set(std::size_t i, std::size_t j, double value) {
  if (j > i) std::swap(i, j);
  assert(i - j <= bw_ && i < n_);
  data_[index(i, j)] = value;
}

void SymBandMatrix::add(std::size_t i, std::size_t j, double value) {
  if (j > i) std::swap(i, j);
  assert(i - j <= bw_ && i < n_);
  data_[index(i, j)] += value;
}

void SymBandMatrix::add_diagonal(std::span<const double> values, double factor) {
  for (std::size_t i = 0; i < n_; ++i) data_[index(i, i)] += factor * values[i];
}

void SymBandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    const double* row = row_data(i) + (j0 + bw_ - i);
    double acc = 0.0;
    for (std::size_t j = j0; j < i; ++j) {
      const double a = row[j - j0];
      acc += a * x[j];
      y[j] += a * x[i];
    }
    y[i] += acc + row[i - j0] * x[i];
  }
}

double SymBandMatrix::quadratic_form(std::span<const double> x) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    const double* row = row_data(i) + (j0 + bw_ - i);
    double acc = 0.0;
    for (std::size_t j = j0; j < i; ++j) acc += row[j - j0] * x[j];
    total += x[i] * (2.0 * acc + row[i - j0] * x[i]);
  }
  return total;
}

SymBandMatrix combine(const SymBandMatrix& a, double factor, const SymBandMatrix& b) {
  if (a.n_ != b.n_ || a.bw_ != b.bw_) throw std::invalid_argument("combine: shape mismatch");
  SymBandMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += factor * b.data_[k];
  return out;
}

SymBandMatrix SymBandMatrix::congruence_by_inverse_sqrt(std::span<const double> diagonal) const {
  std::vector<double> s(n_);
  for (std::size_t i = 0; i < n_; ++i) s[i] = 1.0 / std::sqrt(diagonal[i]);
  SymBandMatrix out = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j) out.data_[index(i, j)] *= s[i] * s[j];
  }
  return out;
}

double SymBandMatrix::gershgorin_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  std::vector<double> radius(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j < i; ++j) {
      const double a = std::abs(data_[index(i, j)]);
      radius[i] += a;
      radius[j] += a;
    }
  }
  for (std::size_t i = 0; i < n_; ++i) lo = std::min(lo, data_[index(i, i)] - radius[i]);
  return lo;
}

double SymBandMatrix::gershgorin_upper() const {
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<double> radius(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j < i; ++j) {
      const double a = std::abs(data_[index(i, j)]);
      radius[i] += a;
      radius[j] += a;
    }
  }
  for (std::size_t i = 0; i < n_; ++i) hi = std::max(hi, data_[index(i, i)] + radius[i]);
  return hi;
}

double SymBandMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

void SymBandMatrix::write_coordinates(std::ostream& out) const {
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      if (data_[index(i, j)] != 0.0) nnz += (i == j) ? 1 : 2;
    }
  }
  out << n_ << ' ' << nnz << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      const double v = data_[index(i, j)];
      if (v == 0.0) continue;
      out << i + 1 << ' ' << j + 1 << ' ' << v << '\n';
      if (i != j) out << j + 1 << ' ' << i + 1 << ' ' << v << '\n';
    }
  }
}

BandLDLT::BandLDLT(const SymBandMatrix& a, double shift)
    : n_(a.size()), bw_(a.bandwidth()), lower_(n_ * (bw_ + 1), 0.0), pivots_(n_, 0.0) {
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(a.max_abs(), std::abs(shift)) + 1e-300;
  std::vector<double> scaled(bw_ + 1);  // L_ik * d_k for the current row
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    const double* arow = a.row_data(i) + (j0 + bw_ - i);
    double* lrow = lower_.data() + i * (bw_ + 1) + (j0 + bw_ - i);
    for (std::size_t j = j0; j < i; ++j) {
      // L_ij d_j = a_ij - sum_{k < j} L_ik L_jk d_k
      const std::size_t k0 = std::max(j0, j > bw_ ? j - bw_ : 0);
      const double* ljrow = lower_.data() + j * (bw_ + 1) + (k0 + bw_ - j);
      double acc = arow[j - j0];
      for (std::size_t k = k0; k < j; ++k) acc -= scaled[k - j0] * ljrow[k - k0];
      scaled[j - j0] = acc;
      lrow[j - j0] = acc / pivots_[j];
    }
    double diag = arow[i - j0] - shift;
    for (std::size_t k = j0; k < i; ++k) diag -= scaled[k - j0] * lrow[k - j0];
    if (std::abs(diag) < tiny) diag = diag < 0.0 ? -tiny : tiny;
    pivots_[i] = diag;
    if (diag < 0.0) ++negatives_;
  }
}

void BandLDLT::solve(std::span<double> x) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    const double* lrow = lower_.data() + i * (bw_ + 1) + (j0 + bw_ - i);
    double acc = x[i];
    for (std::size_t j = j0; j < i; ++j) acc -= lrow[j - j0] * x[j];
    x[i] = acc;
  }
  for (std::size_t i = 0; i < n_; ++i) x[i] /= pivots_[i];
  for (std::size_t i = n_; i-- > 0;) {
    const std::size_t j0 = i > bw_ ? i - bw_ : 0;
    const double* lrow = lower_.data() + i * (bw_ + 1) + (j0 + bw_ - i);
    const double xi = x[i];
    for (std::size_t j = j0; j < i; ++j) x[j] -= lrow[j - j0] * xi;
  }
}

}  // namespace qwave
