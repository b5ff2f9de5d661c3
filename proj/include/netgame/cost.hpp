#pragma once

#include <functional>

namespace netgame {

/// Protection-cost function of a defender: increasing, differentiable and
/// strictly convex on [0,1] with c(0) = 0. The derivative inverse must be
/// supplied explicitly; the solver never inverts a derivative numerically.
class CostFunction {
 public:
  /// c(x) = gamma * x^2 / 2, the default cost family.
  static CostFunction quadratic(double gamma);

  static CostFunction custom(std::function<double(double)> value,
                             std::function<double(double)> deriv,
                             std::function<double(double)> deriv_inverse);

  double value(double x) const;
  double deriv(double x) const;
  /// Inverse of the derivative on [0, c'(1)].
  double deriv_inverse(double y) const;

  bool is_quadratic() const { return quadratic_; }
  double gamma() const;

 private:
  CostFunction() = default;

  bool quadratic_ = true;
  double gamma_ = 1.0;
  std::function<double(double)> value_;
  std::function<double(double)> deriv_;
  std::function<double(double)> deriv_inv_;
};

}  // namespace netgame
