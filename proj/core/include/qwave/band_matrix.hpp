#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace qwave {

// Symmetric matrix with half-bandwidth b, stored by rows of the lower band:
// row i keeps columns max(0, i - b) .. i.
class SymBandMatrix {
 public:
  SymBandMatrix() = default;
  SymBandMatrix(std::size_t n, std::size_t bandwidth);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return bw_; }

  // Any (i, j); zero outside the band.
  double operator()(std::size_t i, std::size_t j) const;
  // Requires |i - j| <= bandwidth().
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);
  void add_diagonal(std::span<const double> values, double factor = 1.0);

  void multiply(std::span<const double> x, std::span<double> y) const;
  double quadratic_form(std::span<const double> x) const;

  // Returns a + factor * b; both must have equal size and bandwidth.
  friend SymBandMatrix combine(const SymBandMatrix& a, double factor, const SymBandMatrix& b);
  // D^{-1/2} A D^{-1/2} for a positive diagonal D.
  SymBandMatrix congruence_by_inverse_sqrt(std::span<const double> diagonal) const;

  double gershgorin_lower() const;
  double gershgorin_upper() const;
  double max_abs() const;

  // Coordinate text format: header "n nnz", then "i j value" (1-based,
  // full symmetric pattern).
  void write_coordinates(std::ostream& out) const;

  const double* row_data(std::size_t i) const { return data_.data() + i * (bw_ + 1); }

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * (bw_ + 1) + (j + bw_ - i); }

  std::size_t n_ = 0;
  std::size_t bw_ = 0;
  std::vector<double> data_;
};

SymBandMatrix combine(const SymBandMatrix& a, double factor, const SymBandMatrix& b);

// A - shift I = L D L^T without pivoting, in band storage. The number of
// negative pivots equals the number of eigenvalues below `shift`
// (Sylvester's law of inertia).
class BandLDLT {
 public:
  BandLDLT(const SymBandMatrix& a, double shift);

  std::size_t negative_count() const { return negatives_; }
  void solve(std::span<double> rhs) const;

 private:
  std::size_t n_ = 0;
  std::size_t bw_ = 0;
  std::vector<double> lower_;  // same layout as SymBandMatrix, unit diagonal implied
  std::vector<double> pivots_;
  std::size_t negatives_ = 0;
};

}  // namespace qwave
