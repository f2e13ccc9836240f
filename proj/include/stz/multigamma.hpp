#pragma once

// Hurwitz zeta functions of order r, the normalized multiple gamma functions
// Gamma_r(s) = exp(d/dw zeta_r(w, s) at w = 0), the normalized multiple sine
// functions S_r(s) = Gamma_r(s)^{-1} Gamma_r(r - s)^{(-1)^r}, and the genus
// dependent factors built from them.

#include "stz/special_value.hpp"

#include <complex>
#include <string>
#include <vector>

namespace stz {

struct EvaluatorConfig {
  /// Terms summed directly before the Euler-Maclaurin tail.
  int em_cutoff = 24;
  /// Bernoulli correction terms in the tail.
  int bernoulli_terms = 12;
  double target_rel_tol = 1e-12;
};

struct SurfaceParams {
  explicit SurfaceParams(int genus);
  int genus;
};

class SpecialEvaluator {
public:
  explicit SpecialEvaluator(EvaluatorConfig config = {});

  const EvaluatorConfig& config() const noexcept { return config_; }

  /// zeta_H(w, s) = sum_{n>=0} (n + s)^{-w}, analytically continued in w.
  ComplexValue hurwitz_zeta(std::complex<double> w, double s) const;
  /// d/dw zeta_H(w, s).
  ComplexValue hurwitz_zeta_dw(std::complex<double> w, double s) const;

  /// zeta_r(w, s) for r in [1, 4] via zeta_r = sum_j c_j(s) zeta_H(w - j, s).
  ComplexValue multiple_hurwitz_zeta(int r, std::complex<double> w, double s) const;

  /// log Gamma_r(s) for r in [1, 4], s > 0.
  RealValue log_gamma_r(int r, double s) const;
  RealValue gamma_r(int r, double s) const;

  /// S_1 on (0, 1); S_2 on (0, 2) directly and elsewhere through the ladder
  /// S_2(s + 1) = S_2(s) / (2 sin pi s).
  RealValue sine_r(int r, double s) const;

  /// log Gamma_M(s) = (2g - 2) (log Gamma_2(s) + log Gamma_2(s + 1)).
  RealValue log_gamma_M(double s, SurfaceParams params) const;
  RealValue gamma_M(double s, SurfaceParams params) const;

  /// S_M(s) = (S_2(s) S_2(s + 1))^{2 - 2g}.
  RealValue s_M(double s, SurfaceParams params) const;

  /// exp((4 - 4g) int_0^{s - 1/2} pi t tan(pi t) dt) for 0 < s < 1.
  RealValue selberg_fe_factor(double s, SurfaceParams params) const;

private:
  struct LogSine {
    double log_abs;
    int sign;
    double err;  // absolute error of log_abs
  };
  LogSine log_sine2(double s) const;

  EvaluatorConfig config_;
  std::vector<double> bernoulli_;  // B_{2j} / (2j)!, j = 1..bernoulli_terms+1
};

/// Coefficients c_0..c_{r-1} of binomial(n + r - 1, r - 1) expanded in powers
/// of m = n + s.
std::vector<double> reduction_coefficients(int r, double s);

// Identity checks over fixed grids; each row is one grid point.

struct IdentityRow {
  std::string label;
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::string name;
  std::vector<IdentityRow> rows;
  bool pass() const;
};

/// Central difference of log S_2 (h = 1e-5) against pi (1 - s) cot(pi s).
IdentityReport check_s2_ode(const SpecialEvaluator& ev);
/// Both ladder relations on s = 0.1, ..., 0.9, relative error.
IdentityReport check_s2_ladder(const SpecialEvaluator& ev);
/// Quadrature factor against (S_2(s) S_2(s+1))^{2-2g} on 17 interior points.
IdentityReport check_fe_integral(const SpecialEvaluator& ev, SurfaceParams params);
/// zeta_2 reduction against a raw double sum with integral tail bounds; the
/// row's `s` is the point's s and `tolerance` the oracle bound.
IdentityReport check_reduction(const SpecialEvaluator& ev);

/// Interior grid s_i = 0.1 + 0.8 i / 18, i = 1..17.
std::vector<double> fe_integral_grid();

}  // namespace stz
