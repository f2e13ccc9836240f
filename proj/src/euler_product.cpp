#include "stz/errors.hpp"
#include "stz/spectrum.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace stz {
namespace {

constexpr double kInnerCutoff = 1e-17;

void require_convergent(double s, const char* what) {
  if (!(s > 1.0 + 1e-3))
    throw DomainError(fmt::format("{} needs s > 1 + 1e-3, got {:.17g}", what, s));
}

// log prod_n (1 - N^{-(s+n)}) and its inner truncation bound.
std::pair<double, double> log_inner(double length, double s) {
  CompensatedSum<double> sum;
  double tail = 0.0;
  for (int n = 0;; ++n) {
    const double t = std::exp(-length * (s + n));
    if (t < kInnerCutoff) {
      // Remaining terms are a geometric series in exp(-length).
      tail = t / (1.0 - std::exp(-length)) * 1.5;
      break;
    }
    sum.add(std::log1p(-t));
  }
  return {sum.value(), tail};
}

}  // namespace

RealValue selberg_Z(double s, const LengthSpectrum& sp) {
  require_convergent(s, "selberg_Z");
  CompensatedSum<double> log_z;
  double log_err = 0.0;
  for (const auto& e : sp.entries) {
    const auto [lg, tail] = log_inner(e.length, s);
    const double m = static_cast<double>(e.multiplicity);
    log_z.add(m * lg);
    log_err += m * tail;
  }
  const double v = std::exp(log_z.value());
  return {v, v * (std::expm1(log_err) + 4 * std::numeric_limits<double>::epsilon())};
}

RealValue euler_zeta(double s, const LengthSpectrum& sp) {
  require_convergent(s, "euler_zeta");
  // Factors below the inner cutoff of selberg_Z are skipped here too, so
  // zeta_M(s) = Z_M(s+1) / Z_M(s) holds for the shared truncation.
  CompensatedSum<double> log_z;
  double skipped = 0.0;
  for (const auto& e : sp.entries) {
    const double m = static_cast<double>(e.multiplicity);
    const double t = std::exp(-e.length * s);
    if (t < kInnerCutoff)
      skipped += 1.5 * m * t;
    else
      log_z.add(-m * std::log1p(-t));
  }
  const double v = std::exp(log_z.value());
  return {v, v * (std::expm1(skipped) + 4 * std::numeric_limits<double>::epsilon())};
}

namespace {

template <typename Eval>
RealValue motive_product(const LaurentPoly& f, double s, const LengthSpectrum& sp,
                         const char* name, Eval eval) {
  for (const auto& [k, a] : f.coeffs())
    if (!(s - static_cast<double>(k) > 1.0 + 1e-3))
      throw DomainError(fmt::format(
          "{}(s - k) diverges for k = {}: s - k = {:.17g} is not > 1 + 1e-3", name, k,
          s - static_cast<double>(k)));
  CompensatedSum<double> log_z;
  double rel_err = 0.0;
  for (const auto& [k, a] : f.coeffs()) {
    const double ad = static_cast<double>(a);
    const RealValue z = eval(s - static_cast<double>(k), sp);
    log_z.add(ad * std::log(z.value));
    rel_err += std::abs(ad) * z.abs_err / z.value;
  }
  const double v = std::exp(log_z.value());
  return {v, v * rel_err};
}

}  // namespace

RealValue zeta_motive_numeric(const LaurentPoly& f, double s, const LengthSpectrum& sp) {
  return motive_product(f, s, sp, "zeta_M", euler_zeta);
}

RealValue Z_motive_numeric(const LaurentPoly& f, double s, const LengthSpectrum& sp) {
  return motive_product(f, s, sp, "Z_M", selberg_Z);
}

std::uint64_t geodesic_count(double x, const LengthSpectrum& sp) {
  std::uint64_t n = 0;
  for (const auto& e : sp.entries) {
    if (std::exp(e.length) > x) break;
    n += e.multiplicity;
  }
  return n;
}

PgtTable pgt_table(const LengthSpectrum& sp, const std::vector<double>& xs) {
  PgtTable t;
  const double limit = std::exp(sp.horizon);
  for (double x : xs) {
    PgtRow r;
    r.x = x;
    r.count = geodesic_count(x, sp);
    r.x_over_logx = x / std::log(x);
    r.ratio = static_cast<double>(r.count) / r.x_over_logx;
    r.within_horizon = x > std::exp(1.0) && x <= limit;
    if (!r.within_horizon)
      t.warnings.push_back(fmt::format(
          "x = {:.17g} lies outside (e, exp(horizon) = {:.17g}]; the count may be incomplete", x,
          limit));
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace stz
