#include "stz/multigamma.hpp"

#include "stz/errors.hpp"
#include "stz/quadrature.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace stz {

using cplx = std::complex<double>;

SurfaceParams::SurfaceParams(int g) : genus(g) {
  if (g < 2) throw DomainError(fmt::format("genus must be at least 2, got {}", g));
}

SpecialEvaluator::SpecialEvaluator(EvaluatorConfig config) : config_(config) {
  if (config_.em_cutoff < 8)
    throw DomainError(fmt::format("Euler-Maclaurin cutoff must be >= 8, got {}", config_.em_cutoff));
  if (config_.bernoulli_terms < 4)
    throw DomainError(
        fmt::format("Bernoulli term count must be >= 4, got {}", config_.bernoulli_terms));
  if (!(config_.target_rel_tol > 0.0)) throw DomainError("target tolerance must be positive");
  // One extra coefficient for the first omitted term.
  for (int j = 1; j <= config_.bernoulli_terms + 1; ++j)
    bernoulli_.push_back(boost::math::bernoulli_b2n<double>(j) /
                         boost::math::factorial<double>(2 * j));
}

namespace {

struct EulerMaclaurin {
  cplx value;
  cplx derivative;
  double err_value;
  double err_derivative;
};

// zeta_H(w, s) and its w-derivative, every term differentiated analytically.
EulerMaclaurin euler_maclaurin(cplx w, double s, int cutoff, const std::vector<double>& bern) {
  CompensatedSum<cplx> sum, dsum;
  double mag = 0.0, dmag = 0.0;  // sums of |terms|, for the rounding bound
  auto add = [&](cplx t, cplx dt) {
    sum.add(t);
    dsum.add(dt);
    mag += std::abs(t);
    dmag += std::abs(dt);
  };
  for (int n = 0; n < cutoff; ++n) {
    const double x = n + s;
    const double lx = std::log(x);
    const cplx t = std::exp(-w * lx);
    add(t, -lx * t);
  }
  const double a = cutoff + s;
  const double la = std::log(a);
  const cplx a_mw = std::exp(-w * la);  // a^{-w}
  const cplx a_1mw = a * a_mw;          // a^{1-w}
  const cplx wm1 = w - 1.0;

  add(a_1mw / wm1, -la * a_1mw / wm1 - a_1mw / (wm1 * wm1));
  add(0.5 * a_mw, -0.5 * la * a_mw);

  // Rising factorial (w)_{2j-1} and its derivative.
  cplx p = w, dp = 1.0;
  double a_inv_pow = 1.0 / a;  // a^{-(2j-1)}
  const int terms = static_cast<int>(bern.size()) - 1;
  EulerMaclaurin out{};
  for (int j = 1; j <= terms + 1; ++j) {
    const cplx base = a_mw * a_inv_pow;
    const cplx term = bern[j - 1] * p * base;
    const cplx dterm = bern[j - 1] * (dp - p * la) * base;
    if (j <= terms) {
      add(term, dterm);
    } else {
      out.err_value = std::abs(term);
      out.err_derivative = std::abs(dterm);
    }
    // (w)_{2j+1} = (w)_{2j-1} (w + 2j - 1)(w + 2j)
    const cplx f1 = w + (2.0 * j - 1.0), f2 = w + 2.0 * j;
    dp = dp * f1 * f2 + p * (f1 + f2);
    p = p * f1 * f2;
    a_inv_pow /= a * a;
  }
  out.value = sum.value();
  out.derivative = dsum.value();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  out.err_value += 4 * eps * mag;
  out.err_derivative += 4 * eps * dmag;
  return out;
}

void check_hurwitz_args(cplx w, double s) {
  if (!(s > 0.0)) throw DomainError(fmt::format("Hurwitz zeta needs s > 0, got {}", s));
  if (w == cplx(1.0, 0.0)) throw PoleError("Hurwitz zeta has a pole at w = 1");
}

void check_order(int r, int max_r) {
  if (r < 1 || r > max_r)
    throw DomainError(fmt::format("order r must be in [1, {}], got {}", max_r, r));
}

bool is_integer(double s) { return std::floor(s) == s; }

}  // namespace

ComplexValue SpecialEvaluator::hurwitz_zeta(cplx w, double s) const {
  check_hurwitz_args(w, s);
  const auto em = euler_maclaurin(w, s, config_.em_cutoff, bernoulli_);
  return {em.value, em.err_value};
}

ComplexValue SpecialEvaluator::hurwitz_zeta_dw(cplx w, double s) const {
  check_hurwitz_args(w, s);
  const auto em = euler_maclaurin(w, s, config_.em_cutoff, bernoulli_);
  return {em.derivative, em.err_derivative};
}

std::vector<double> reduction_coefficients(int r, double s) {
  check_order(r, 4);
  // prod_{i=1}^{r-1} (m + (i - s)) / (r-1)!
  std::vector<double> c{1.0};
  for (int i = 1; i < r; ++i) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j] += c[j] * (i - s);
      next[j + 1] += c[j];
    }
    c = std::move(next);
  }
  const double fact = boost::math::factorial<double>(r - 1);
  for (double& x : c) x /= fact;
  return c;
}

ComplexValue SpecialEvaluator::multiple_hurwitz_zeta(int r, cplx w, double s) const {
  check_order(r, 4);
  if (!(s > 0.0)) throw DomainError(fmt::format("zeta_r needs s > 0, got {}", s));
  for (int j = 1; j <= r; ++j)
    if (w == cplx(j, 0.0)) throw PoleError(fmt::format("zeta_{} has a pole at w = {}", r, j));
  const auto c = reduction_coefficients(r, s);
  ComplexValue out{};
  CompensatedSum<cplx> sum;
  for (int j = 0; j < r; ++j) {
    const auto em = euler_maclaurin(w - static_cast<double>(j), s, config_.em_cutoff, bernoulli_);
    sum.add(c[j] * em.value);
    out.abs_err += std::abs(c[j]) * em.err_value;
  }
  out.value = sum.value();
  return out;
}

RealValue SpecialEvaluator::log_gamma_r(int r, double s) const {
  check_order(r, 4);
  if (!(s > 0.0)) throw DomainError(fmt::format("Gamma_r needs s > 0, got {}", s));
  const auto c = reduction_coefficients(r, s);
  RealValue out{};
  CompensatedSum<double> sum;
  for (int j = 0; j < r; ++j) {
    const auto em = euler_maclaurin(cplx(-j, 0.0), s, config_.em_cutoff, bernoulli_);
    sum.add(c[j] * em.derivative.real());
    out.abs_err += std::abs(c[j]) * em.err_derivative;
  }
  out.value = sum.value();
  return out;
}

RealValue SpecialEvaluator::gamma_r(int r, double s) const {
  const RealValue lg = log_gamma_r(r, s);
  const double v = std::exp(lg.value);
  return {v, v * lg.abs_err};
}

SpecialEvaluator::LogSine SpecialEvaluator::log_sine2(double s) const {
  if (s > 0.0 && s < 2.0) {
    const RealValue hi = log_gamma_r(2, 2.0 - s);
    const RealValue lo = log_gamma_r(2, s);
    return {hi.value - lo.value, 1, hi.abs_err + lo.abs_err};
  }
  if (is_integer(s))
    throw PoleError(fmt::format("S_2 has a {} at the integer {}", s <= 0.0 ? "zero" : "pole", s));
  // Ladder into (0.5, 1.5].
  double t = s;
  double log_shift = 0.0;
  int sign = 1;
  double err = 0.0;
  auto two_sin = [](double x) { return 2.0 * boost::math::sin_pi(x); };
  while (t > 1.5) {
    t -= 1.0;
    const double f = two_sin(t);  // S_2(t+1) = S_2(t) / f
    log_shift -= std::log(std::abs(f));
    sign *= f < 0 ? -1 : 1;
    err += 4 * std::numeric_limits<double>::epsilon();
  }
  while (t <= 0.5) {
    const double f = two_sin(t);  // S_2(t) = S_2(t+1) f
    log_shift += std::log(std::abs(f));
    sign *= f < 0 ? -1 : 1;
    err += 4 * std::numeric_limits<double>::epsilon();
    t += 1.0;
  }
  const LogSine base = log_sine2(t);
  return {base.log_abs + log_shift, sign * base.sign, base.err + err};
}

RealValue SpecialEvaluator::sine_r(int r, double s) const {
  check_order(r, 2);
  if (r == 1) {
    if (!(s > 0.0 && s < 1.0))
      throw DomainError(fmt::format("S_1 is evaluated on (0, 1) only, got {}", s));
    const RealValue a = log_gamma_r(1, s);
    const RealValue b = log_gamma_r(1, 1.0 - s);
    const double v = std::exp(-a.value - b.value);
    return {v, v * (a.abs_err + b.abs_err)};
  }
  const LogSine ls = log_sine2(s);
  const double mag = std::exp(ls.log_abs);
  return {ls.sign * mag, mag * ls.err};
}

RealValue SpecialEvaluator::log_gamma_M(double s, SurfaceParams params) const {
  const RealValue a = log_gamma_r(2, s);
  const RealValue b = log_gamma_r(2, s + 1.0);
  const double k = 2.0 * params.genus - 2.0;
  return {k * (a.value + b.value), k * (a.abs_err + b.abs_err)};
}

RealValue SpecialEvaluator::gamma_M(double s, SurfaceParams params) const {
  const RealValue lg = log_gamma_M(s, params);
  const double v = std::exp(lg.value);
  return {v, v * lg.abs_err};
}

RealValue SpecialEvaluator::s_M(double s, SurfaceParams params) const {
  if (is_integer(s)) throw PoleError(fmt::format("S_M is singular at the integer {}", s));
  const LogSine a = log_sine2(s);
  const LogSine b = log_sine2(s + 1.0);
  // The exponent 2 - 2g is even, so the sign drops out.
  const double k = 2.0 - 2.0 * params.genus;
  const double v = std::exp(k * (a.log_abs + b.log_abs));
  return {v, v * std::abs(k) * (a.err + b.err)};
}

RealValue SpecialEvaluator::selberg_fe_factor(double s, SurfaceParams params) const {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError(fmt::format("the integral factor is evaluated on (0, 1) only, got {}", s));
  const auto integrand = [](double t) {
    return std::numbers::pi * t * std::tan(std::numbers::pi * t);
  };
  const RealValue integral = integrate_adaptive(integrand, 0.0, s - 0.5, 1e-12);
  const double k = 4.0 - 4.0 * params.genus;
  const double v = std::exp(k * integral.value);
  return {v, v * std::abs(k) * integral.abs_err};
}

// ---------------------------------------------------------------------------
// Identity checks

bool IdentityReport::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

namespace {

IdentityRow make_row(std::string label, double s, double lhs, double rhs, double error,
                     double tol) {
  return {std::move(label), s, lhs, rhs, error, tol, error < tol};
}

std::vector<double> tenths() {
  std::vector<double> g;
  for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
  return g;
}

}  // namespace

std::vector<double> fe_integral_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 17; ++i) g.push_back(0.1 + 0.8 * i / 18.0);
  return g;
}

IdentityReport check_s2_ode(const SpecialEvaluator& ev) {
  IdentityReport rep{"ode", {}};
  constexpr double h = 1e-5;
  for (double s : tenths()) {
    const double up = std::log(std::abs(ev.sine_r(2, s + h).value));
    const double dn = std::log(std::abs(ev.sine_r(2, s - h).value));
    const double fd = (up - dn) / (2 * h);
    const double exact = std::numbers::pi * (1 - s) / std::tan(std::numbers::pi * s);
    rep.rows.push_back(make_row("dlogS2", s, fd, exact, std::abs(fd - exact), 1e-6));
  }
  return rep;
}

IdentityReport check_s2_ladder(const SpecialEvaluator& ev) {
  IdentityReport rep{"ladder", {}};
  for (double s : tenths()) {
    const double two_sin = 2.0 * std::sin(std::numbers::pi * s);
    const double s0 = ev.sine_r(2, s).value;
    const double s1 = ev.sine_r(2, s + 1).value;
    const double s2 = ev.sine_r(2, s + 2).value;
    // S_2(s+1) = S_2(s) / (2 sin pi s)
    const double rhs1 = s0 / two_sin;
    rep.rows.push_back(make_row("S2(s+1)", s, s1, rhs1, std::abs(s1 - rhs1) / std::abs(s1), 1e-10));
    // S_2(s+2) = -S_2(s+1) / (2 sin pi s)
    const double rhs2 = -s1 / two_sin;
    rep.rows.push_back(make_row("S2(s+2)", s, s2, rhs2, std::abs(s2 - rhs2) / std::abs(s2), 1e-10));
  }
  return rep;
}

IdentityReport check_fe_integral(const SpecialEvaluator& ev, SurfaceParams params) {
  IdentityReport rep{fmt::format("fe-integral (g={})", params.genus), {}};
  for (double s : fe_integral_grid()) {
    const double lhs = ev.selberg_fe_factor(s, params).value;
    const double rhs = ev.s_M(s, params).value;
    rep.rows.push_back(make_row("fe-factor", s, lhs, rhs, std::abs(lhs / rhs - 1.0), 1e-9));
  }
  return rep;
}

namespace {

struct OracleValue {
  double value;
  double bound;
};

// zeta_2(w, s) for real w > 2 from the raw double sum over n1 + n2 <= m, with
// the tail sum_{n>m} (n+1)(n+s)^{-w} bracketed by the trapezoid and midpoint
// integrals of that convex summand.
OracleValue double_sum_oracle(double w, double s, int m) {
  CompensatedSum<double> sum;
  for (int n1 = 0; n1 <= m; ++n1)
    for (int n2 = 0; n1 + n2 <= m; ++n2) sum.add(std::pow(n1 + n2 + s, -w));
  const double x0 = m + 0.5;
  if (!((w - 1) * (x0 + s) + (1 - s) * (w + 1) > 0))
    throw std::logic_error("double-sum oracle: summand not convex on the tail");
  auto phi = [&](double x) { return (x + 1) * std::pow(x + s, -w); };
  auto tail_integral = [&](double x) {
    return std::pow(x + s, 2 - w) / (w - 2) + (1 - s) * std::pow(x + s, 1 - w) / (w - 1);
  };
  const double lower = tail_integral(m + 1.0) + 0.5 * phi(m + 1.0);
  const double upper = tail_integral(m + 0.5);
  const double value = sum.value() + 0.5 * (lower + upper);
  const double rounding = 64 * std::numeric_limits<double>::epsilon() * std::abs(value);
  return {value, 0.5 * (upper - lower) + rounding};
}

}  // namespace

IdentityReport check_reduction(const SpecialEvaluator& ev) {
  IdentityReport rep{"reduction", {}};
  const std::pair<double, double> points[] = {{3.0, 1.5}, {4.0, 1.0}, {2.5, 0.7}};
  for (const auto& [w, s] : points) {
    const OracleValue oracle = double_sum_oracle(w, s, 4000);
    const ComplexValue z2 = ev.multiple_hurwitz_zeta(2, w, s);
    const double tol = oracle.bound + z2.abs_err;
    rep.rows.push_back(make_row(fmt::format("zeta2(w={})", w), s, z2.value.real(), oracle.value,
                                std::abs(z2.value.real() - oracle.value), tol));
  }
  return rep;
}

}  // namespace stz
