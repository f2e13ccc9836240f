#pragma once

#include <complex>

namespace stz {

/// A computed value with an error estimate taken from the method's own
/// remainder term.
template <typename Scalar>
struct SpecialValue {
  Scalar value{};
  double abs_err = 0.0;
};

using RealValue = SpecialValue<double>;
using ComplexValue = SpecialValue<std::complex<double>>;

/// Neumaier-compensated accumulator.
template <typename Scalar>
class CompensatedSum {
public:
  void add(Scalar x) {
    add_component(sum_, comp_, x);
  }
  Scalar value() const { return sum_ + comp_; }

private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  static void add_component(std::complex<double>& sum, std::complex<double>& comp,
                            std::complex<double> x) {
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    add_component(sr, cr, x.real());
    add_component(si, ci, x.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }

  Scalar sum_{};
  Scalar comp_{};
};

}  // namespace stz
