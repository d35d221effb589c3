#pragma once

#include <functional>
#include <map>
#include <string>

namespace qwave {

// Closed box outside which the potential vanishes.
struct SupportBox {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  bool empty() const { return !(x_hi > x_lo) || !(y_hi > y_lo); }
  bool contains(double x, double y) const { return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi; }
};

// Nonnegative potential V(x, y) on the strip, carried with its support box
// and a coupling factor alpha (the evaluated field is alpha * V).
class Potential {
 public:
  using Field = std::function<double(double, double)>;

  Potential() = default;  // V = 0
  Potential(std::string name, Field field, SupportBox support, double scale = 1.0);

  double operator()(double x, double y) const {
    if (!field_ || !support_.contains(x, y)) return 0.0;
    return scale_ * field_(x, y);
  }

  const std::string& name() const { return name_; }
  const SupportBox& support() const { return support_; }
  double scale() const { return scale_; }
  bool is_zero() const { return !field_ || support_.empty() || scale_ == 0.0; }

  // Same field with coupling alpha * scale(); alpha must be positive.
  Potential scaled(double alpha) const;

 private:
  std::string name_ = "zero";
  Field field_;
  SupportBox support_;
  double scale_ = 1.0;
};

using ParamMap = std::map<std::string, double>;

// Named test families on a strip of width d:
//   zero           {}
//   gaussian       {A, sigma, x0 = 0, y0 = d/2}       support |x - x0| <= 6 sigma
//   square_well_x  {V0, a, x0 = 0}                     V0 on |x - x0| <= a, all y
//   separable      {A, sigma, x0 = 0, p = 1}           A exp(-(x-x0)^2 / 2 sigma^2) (y/d)^p
//   y_band         {V0, a, x0 = 0, y_lo, y_hi}         V0 on |x - x0| <= a, y_lo <= y <= y_hi
// Throws Error(UnknownFamily) or Error(InvalidParams).
Potential potential_library(const std::string& name, const ParamMap& params, double d);

bool is_known_potential_family(const std::string& name);

}  // namespace qwave
