#include "netgame/cost.hpp"

#include <utility>

#include "netgame/errors.hpp"

namespace netgame {

CostFunction CostFunction::quadratic(double gamma) {
  CostFunction c;
  c.quadratic_ = true;
  c.gamma_ = gamma;
  return c;
}

CostFunction CostFunction::custom(std::function<double(double)> value,
                                  std::function<double(double)> deriv,
                                  std::function<double(double)> deriv_inverse) {
  CostFunction c;
  c.quadratic_ = false;
  c.value_ = std::move(value);
  c.deriv_ = std::move(deriv);
  c.deriv_inv_ = std::move(deriv_inverse);
  return c;
}

double CostFunction::value(double x) const {
  return quadratic_ ? gamma_ * x * x / 2.0 : value_(x);
}

double CostFunction::deriv(double x) const {
  return quadratic_ ? gamma_ * x : deriv_(x);
}

double CostFunction::deriv_inverse(double y) const {
  return quadratic_ ? y / gamma_ : deriv_inv_(y);
}

double CostFunction::gamma() const {
  if (!quadratic_)
    raise(Errc::invalid_cost, "gamma() called on a non-quadratic cost");
  return gamma_;
}

}  // namespace netgame
