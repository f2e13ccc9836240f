#pragma once

// Canonical forms for formal products of shifted zeta_M, Z_M, S_2 and
// (2 sin pi s) factors.
//
// Every S_2 and sine exponent is stored as an integer multiple of (2 - 2g), so
// a single symbolic verdict holds for every genus g >= 2 at once. Because
// 2 - 2g is even, the sign (-1)^{m (2 - 2g)} produced when a shifted sine
// sin pi(s + m) = (-1)^m sin pi s is collapsed is always +1.

#include "stz/tate_motive.hpp"

#include <map>
#include <optional>
#include <string>

namespace stz {

class FormalProduct {
public:
  using ExpMap = std::map<Exponent, BigInt>;

  /// zeta_M(s - k)^e
  FormalProduct& mul_zeta(Exponent k, const BigInt& e);
  /// Z_M(s - k)^e
  FormalProduct& mul_Z(Exponent k, const BigInt& e);
  /// S_2(s + j)^{(2-2g) m}
  FormalProduct& mul_s2(Exponent j, const BigInt& m);
  /// (2 sin pi(s + j))^{(2-2g) q}
  FormalProduct& mul_sine(Exponent j, const BigInt& q);

  const ExpMap& zeta() const noexcept { return zeta_; }
  const ExpMap& bigz() const noexcept { return bigz_; }
  const ExpMap& s2() const noexcept { return s2_; }
  const ExpMap& sine() const noexcept { return sine_; }

  /// Exponent of the unshifted (2 sin pi s), in (2-2g) units.
  BigInt sine_exponent() const;

  bool empty() const noexcept;
  /// S_2 and sine factors only at shift 0.
  bool is_canonical() const noexcept;

  FormalProduct inverse() const;
  FormalProduct pow(const BigInt& n) const;

  FormalProduct& operator*=(const FormalProduct& other);
  friend FormalProduct operator*(FormalProduct a, const FormalProduct& b) { return a *= b; }
  friend bool operator==(const FormalProduct&, const FormalProduct&) = default;

  std::string to_string() const;

private:
  ExpMap zeta_;
  ExpMap bigz_;
  ExpMap s2_;
  ExpMap sine_;
};

/// Switches for the rewrite system. Disabling a rule is only useful for
/// negative controls.
struct RewriteRules {
  /// S_2(s+1) = S_2(s) (2 sin pi s)^{-1}
  bool s2_ladder = true;
  /// sin pi(s + m) = (-1)^m sin pi s under an even exponent
  bool collapse_sine_shifts = true;
};

FormalProduct canonicalize(const FormalProduct& p, const RewriteRules& rules = {});
/// a / b, canonicalized.
FormalProduct quotient(const FormalProduct& a, const FormalProduct& b,
                       const RewriteRules& rules = {});

/// zeta_{M(f)}(s) = prod_k zeta_M(s - k)^{a(k)}
FormalProduct from_motive_zeta(const LaurentPoly& f);
/// Z_{M(f)}(s) = prod_k Z_M(s - k)^{a(k)}
FormalProduct from_motive_Z(const LaurentPoly& f);

/// zeta_{M(f)}(D - s) rewritten in s with zeta_M(-u) = zeta_M(u)^{-1} (2 sin pi u)^{4-4g}.
FormalProduct reflect_zeta(const LaurentPoly& f, Exponent weight, const RewriteRules& rules = {});
/// Z_{M(f)}(D + 1 - s) rewritten in s with Z_M(1 - u) = Z_M(u) (S_2(u) S_2(u+1))^{2-2g}.
/// Not canonicalized.
FormalProduct reflect_Z(const LaurentPoly& f, Exponent weight);

/// S_{M(f)}(s) = prod_k S_M(s - k)^{a(k)} with S_M(s) = (S_2(s) S_2(s+1))^{2-2g}, canonical.
FormalProduct s_motive_factor(const LaurentPoly& f, const RewriteRules& rules = {});

struct Verdict {
  bool holds = false;
  FormalProduct lhs_canonical;
  FormalProduct rhs_canonical;
  /// lhs / rhs
  FormalProduct residual;
  /// Coefficient-side condition, when the check has one.
  std::optional<bool> coefficient_condition;
  /// holds == coefficient_condition
  std::optional<bool> consistent;
};

/// zeta_{M(f)}(D - s) = zeta_{M(f)}(s), decided symbolically and compared with
/// a(D - k) = -a(k).
Verdict verify_theorem2(const LaurentPoly& f, Exponent weight);

/// zeta_{M(f)}(D - s) = zeta_{M(f)}(s)^{-1} (2 sin pi s)^{(4-4g) f(1)}, decided
/// symbolically and compared with a(D - k) = a(k).
Verdict verify_theorem3(const LaurentPoly& f, Exponent weight);

/// Z_{M(f)}(D + 1 - s) = Z_{M(f)}(s)^C S_{M(f)}(s)^C with (C, D) detected
/// from f. Throws DomainError when f has no automorphy or is zero.
Verdict verify_Z_fe(const LaurentPoly& f);

/// Rebuilds zeta_M(-s) zeta_M(s) = (2 sin pi s)^{4-4g} from the Z_M
/// reflection rule alone, with zeta_M(u) = Z_M(u+1) / Z_M(u).
Verdict derive_base_zeta_fe(const RewriteRules& rules = {});

}  // namespace stz
