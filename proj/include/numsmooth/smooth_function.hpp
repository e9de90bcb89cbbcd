#pragma once

#include <functional>
#include <optional>
#include <string>

#include "numsmooth/piecewise_poly.hpp"

namespace numsmooth {

/// A smooth reference function u on [a, b] with exact derivatives up to
/// `max_order`. Seminorms |u|_{W^k_q} come from a closed form when the
/// catalog provides one, otherwise from composite quadrature (64 panels,
/// 1e-10 relative target).
class SmoothFunction {
 public:
  using Derivative = std::function<double(double x, int k)>;
  using ClosedSeminorm = std::function<std::optional<double>(int order, NormKind which)>;

  SmoothFunction(std::string name, double a, double b, int max_order, Derivative derivative,
                 ClosedSeminorm closed_seminorm = {});

  const std::string& name() const noexcept { return name_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  int max_order() const noexcept { return max_order_; }

  double value(double x) const { return derivative_(x, 0); }
  double operator()(double x) const { return derivative_(x, 0); }

  /// Exact k-th derivative, 0 <= k <= max_order (ArgumentError otherwise).
  double derivative(double x, int k) const;

  /// Sobolev seminorm of the derivative of the given order over [a, b].
  double seminorm(int order, NormKind which) const;

 private:
  std::string name_;
  double a_;
  double b_;
  int max_order_;
  Derivative derivative_;
  ClosedSeminorm closed_seminorm_;
};

inline constexpr int kSeminormPanels = 64;

}  // namespace numsmooth
