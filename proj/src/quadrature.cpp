#include "stz/quadrature.hpp"

#include "stz/errors.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace stz {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendreRule::GaussLegendreRule(int order) {
  if (order < 2) throw DomainError("Gauss-Legendre order must be at least 2");
  const int n = order;
  nodes_.resize(n);
  weights_.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

double GaussLegendreRule::integrate(const std::function<double(double)>& f, double a,
                                    double b) const {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  CompensatedSum<double> sum;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum.add(weights_[i] * f(mid + half * nodes_[i]));
  return half * sum.value();
}

namespace {

struct Panel {
  double value;
  double err;
};

Panel adapt(const GaussLegendreRule& rule, const std::function<double(double)>& f, double a,
            double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = rule.integrate(f, a, m);
  const double right = rule.integrate(f, m, b);
  const double diff = std::abs(left + right - whole);
  if (diff <= tol || depth <= 0) return {left + right, diff};
  const Panel l = adapt(rule, f, a, m, left, 0.5 * tol, depth - 1);
  const Panel r = adapt(rule, f, m, b, right, 0.5 * tol, depth - 1);
  return {l.value + r.value, l.err + r.err};
}

}  // namespace

RealValue integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                             double abs_tol, int order, int max_depth) {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (a == b) return {0.0, 0.0};
  const GaussLegendreRule rule(order);
  const Panel p = adapt(rule, f, a, b, rule.integrate(f, a, b), abs_tol, max_depth);
  return {p.value, p.err};
}

}  // namespace stz
