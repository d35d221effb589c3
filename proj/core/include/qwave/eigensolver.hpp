#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwave/band_matrix.hpp"

namespace qwave {

struct EigenOptions {
  // Residual and bracket-width tolerance, relative to the spectral radius.
  double tolerance = 1e-12;
  // Problems with at most this many unknowns go to a dense solver.
  std::size_t dense_threshold = 400;
  // Hard limit on LDL^T factorizations per eigenvalue before giving up.
  std::size_t max_factorizations_per_eigenvalue = 200;
  std::uint64_t seed = 0x5eedULL;
};

struct EigenStats {
  std::size_t factorizations = 0;
  double max_residual = 0.0;
  bool dense = false;
};

// Number of eigenvalues strictly below x.
std::size_t count_below(const SymBandMatrix& a, double x);

// All eigenvalues in [lower, upper), ascending, with multiplicity.
//
// Spectrum slicing: inertia counts of A - sigma I bracket every eigenvalue
// in its own interval, then shift-invert Rayleigh iteration inside each
// bracket polishes it. Brackets that shrink below the tolerance without
// separating report their midpoint with the bracket's multiplicity.
// Throws Error(EigensolverNonconvergence).
std::vector<double> eigenvalues_in(const SymBandMatrix& a, double lower, double upper,
                                   const EigenOptions& options = {}, EigenStats* stats = nullptr);

// The k smallest eigenvalues, ascending.
std::vector<double> lowest_eigenvalues(const SymBandMatrix& a, std::size_t k,
                                       const EigenOptions& options = {}, EigenStats* stats = nullptr);

// Dense reference path (all eigenvalues), used below dense_threshold and in tests.
std::vector<double> dense_eigenvalues(const SymBandMatrix& a);

}  // namespace qwave
