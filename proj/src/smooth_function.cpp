#include "numsmooth/smooth_function.hpp"

#include <algorithm>

#include "numsmooth/errors.hpp"
#include "numsmooth/norms.hpp"

namespace numsmooth {

SmoothFunction::SmoothFunction(std::string name, double a, double b, int max_order,
                               Derivative derivative, ClosedSeminorm closed_seminorm)
    : name_(std::move(name)),
      a_(a),
      b_(b),
      max_order_(max_order),
      derivative_(std::move(derivative)),
      closed_seminorm_(std::move(closed_seminorm)) {
  if (!(b > a)) throw ArgumentError("SmoothFunction " + name_ + ": requires b > a");
  if (max_order < 0) throw ArgumentError("SmoothFunction " + name_ + ": negative max_order");
  if (!derivative_) throw ArgumentError("SmoothFunction " + name_ + ": empty derivative callable");
}

double SmoothFunction::derivative(double x, int k) const {
  if (k < 0 || k > max_order_) {
    throw ArgumentError("SmoothFunction " + name_ + ": derivative order " + std::to_string(k) +
                        " outside 0.." + std::to_string(max_order_));
  }
  return derivative_(x, k);
}

double SmoothFunction::seminorm(int order, NormKind which) const {
  if (order < 0 || order > max_order_) {
    throw ArgumentError("SmoothFunction " + name_ + ": unsupported seminorm order " +
                        std::to_string(order));
  }
  if (closed_seminorm_) {
    if (const auto v = closed_seminorm_(order, which)) return *v;
  }
  const ScalarFunction g = [this, order](double x) { return derivative_(x, order); };
  NormAccumulator acc(which, kMaxDegree);
  const double width = (b_ - a_) / kSeminormPanels;
  for (int j = 0; j < kSeminormPanels; ++j) {
    const double lo = a_ + j * width;
    const double hi = j + 1 == kSeminormPanels ? b_ : a_ + (j + 1) * width;
    acc.add(g, lo, hi);
  }
  return acc.result();
}

}  // namespace numsmooth
