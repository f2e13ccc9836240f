#pragma once

#include "stz/special_value.hpp"

#include <functional>
#include <span>
#include <vector>

namespace stz {

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendreRule {
public:
  explicit GaussLegendreRule(int order);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double integrate(const std::function<double(double)>& f, double a, double b) const;

private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Adaptive bisection: a panel is accepted once the rule on the whole panel and
/// on its two halves agree within the tolerance share of that panel.
RealValue integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                             double abs_tol, int order = 12, int max_depth = 40);

}  // namespace stz
