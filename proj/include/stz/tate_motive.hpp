#pragma once

// Integer Laurent polynomials f = sum a(k) x^k and their absolute automorphy
// f(1/x) = C x^{-D} f(x).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stz {

using BigInt = boost::multiprecision::cpp_int;
using Exponent = std::int64_t;

class LaurentPoly {
public:
  using CoeffMap = std::map<Exponent, BigInt>;

  LaurentPoly() = default;

  /// Sums duplicate exponents and drops zero coefficients.
  static LaurentPoly normalize(const std::vector<std::pair<Exponent, BigInt>>& raw);
  static LaurentPoly monomial(Exponent k, BigInt a = 1);
  static LaurentPoly constant(BigInt a) { return monomial(0, std::move(a)); }

  /// Parses "k=a,k=a,..." (whitespace ignored, duplicates summed).
  static LaurentPoly parse(std::string_view text);

  const CoeffMap& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// a(k); zero outside the support.
  BigInt coeff(Exponent k) const;
  Exponent min_exponent() const;  // requires !is_zero()
  Exponent max_exponent() const;  // requires !is_zero()

  /// Spec-style text form, e.g. "-1=1,0=-1".
  std::string to_spec() const;
  /// Human-readable form, e.g. "x^-1 - 1".
  std::string to_string() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g);
  friend LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g);
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);
  friend bool operator==(const LaurentPoly& f, const LaurentPoly& g) = default;

private:
  void add_term(Exponent k, const BigInt& a);

  CoeffMap coeffs_;
};

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g);

/// (x - 1)^r.
LaurentPoly binom_power(unsigned r);

/// f(1) = sum_k a(k).
BigInt eval_at_one(const LaurentPoly& f);

/// x^D f(1/x), i.e. the polynomial whose x^k coefficient is a(D - k).
LaurentPoly reverse(const LaurentPoly& f, Exponent weight);

enum class AutomorphyKind { Odd, Even, None, Zero };

struct AutomorphyClass {
  AutomorphyKind kind = AutomorphyKind::None;
  /// Weight D, set for Odd and Even.
  std::optional<Exponent> weight;
  /// -1 for Odd, +1 for Even.
  std::optional<int> sign;

  friend bool operator==(const AutomorphyClass&, const AutomorphyClass&) = default;
};

/// For nonzero f the only candidate weight is min_exp + max_exp; f is Odd when
/// a(D-k) = -a(k) for all k and Even when a(D-k) = a(k).
AutomorphyClass detect_automorphy(const LaurentPoly& f);

/// Coefficient test a(D-k) = sign * a(k) for all k against a caller-chosen D.
/// True for f = 0 and any D.
bool satisfies_automorphy(const LaurentPoly& f, Exponent weight, int sign);

const char* to_string(AutomorphyKind kind);

}  // namespace stz
