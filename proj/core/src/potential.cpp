#include "qwave/potential.hpp"

#include <array>
#include <cmath>
#include <set>

#include "qwave/errors.hpp"

namespace qwave {

Potential::Potential(std::string name, Field field, SupportBox support, double scale)
    : name_(std::move(name)), field_(std::move(field)), support_(support), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw Error(ErrorKind::InvalidParams, "potential scale must be positive");
}

Potential Potential::scaled(double alpha) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidParams, "alpha must be positive");
  Potential out = *this;
  out.scale_ = scale_ * alpha;
  return out;
}

namespace {

constexpr std::array kFamilies{"zero", "gaussian", "square_well_x", "separable", "y_band"};

class Params {
 public:
  Params(const std::string& family, const ParamMap& values, std::set<std::string> allowed)
      : family_(family), values_(values) {
    for (const auto& [key, value] : values_) {
      if (!allowed.count(key)) throw Error(ErrorKind::InvalidParams, family_ + ": unknown parameter '" + key + "'");
      if (!std::isfinite(value)) throw Error(ErrorKind::InvalidParams, family_ + ": parameter '" + key + "' is not finite");
    }
  }

  double get(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double positive(const std::string& key, double fallback) const {
    const double v = get(key, fallback);
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidParams, family_ + ": '" + key + "' must be positive");
    return v;
  }

  double nonnegative(const std::string& key, double fallback) const {
    const double v = get(key, fallback);
    if (!(v >= 0.0)) throw Error(ErrorKind::InvalidParams, family_ + ": '" + key + "' must be nonnegative");
    return v;
  }

 private:
  std::string family_;
  const ParamMap& values_;
};

}  // namespace

bool is_known_potential_family(const std::string& name) {
  for (const char* f : kFamilies) {
    if (name == f) return true;
  }
  return false;
}

Potential potential_library(const std::string& name, const ParamMap& params, double d) {
  if (!is_known_potential_family(name)) throw Error(ErrorKind::UnknownFamily, "potential family '" + name + "'");
  if (!(d > 0.0)) throw Error(ErrorKind::InvalidParams, "strip width must be positive");

  if (name == "zero") {
    Params p(name, params, {});
    return {};
  }
  if (name == "gaussian") {
    Params p(name, params, {"A", "sigma", "x0", "y0"});
    const double A = p.nonnegative("A", 1.0);
    const double sigma = p.positive("sigma", 1.0);
    const double x0 = p.get("x0", 0.0);
    const double y0 = p.get("y0", 0.5 * d);
    auto field = [=](double x, double y) {
      const double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
      return A * std::exp(-0.5 * r2 / (sigma * sigma));
    };
    return {name, field, {x0 - 6.0 * sigma, x0 + 6.0 * sigma, 0.0, d}};
  }
  if (name == "square_well_x") {
    Params p(name, params, {"V0", "a", "x0"});
    const double V0 = p.nonnegative("V0", 1.0);
    const double a = p.positive("a", 1.0);
    const double x0 = p.get("x0", 0.0);
    return {name, [=](double, double) { return V0; }, {x0 - a, x0 + a, 0.0, d}};
  }
  if (name == "separable") {
    Params p(name, params, {"A", "sigma", "x0", "p"});
    const double A = p.nonnegative("A", 1.0);
    const double sigma = p.positive("sigma", 1.0);
    const double x0 = p.get("x0", 0.0);
    const double power = p.nonnegative("p", 1.0);
    auto field = [=](double x, double y) {
      return A * std::exp(-0.5 * (x - x0) * (x - x0) / (sigma * sigma)) * std::pow(y / d, power);
    };
    return {name, field, {x0 - 6.0 * sigma, x0 + 6.0 * sigma, 0.0, d}};
  }
  // y_band
  Params p(name, params, {"V0", "a", "x0", "y_lo", "y_hi"});
  const double V0 = p.nonnegative("V0", 1.0);
  const double a = p.positive("a", 1.0);
  const double x0 = p.get("x0", 0.0);
  const double y_lo = p.get("y_lo", 0.5 * d);
  const double y_hi = p.get("y_hi", d);
  if (!(y_lo >= 0.0 && y_hi <= d && y_lo < y_hi)) {
    throw Error(ErrorKind::InvalidParams, "y_band: need 0 <= y_lo < y_hi <= d");
  }
  return {name, [=](double, double) { return V0; }, {x0 - a, x0 + a, y_lo, y_hi}};
}

}  // namespace qwave
