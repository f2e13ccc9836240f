#include "stz/fe_engine.hpp"

#include "stz/errors.hpp"

#include <fmt/format.h>

namespace stz {
namespace {

void add_exp(FormalProduct::ExpMap& m, Exponent key, const BigInt& e) {
  if (e == 0) return;
  auto [it, inserted] = m.try_emplace(key, e);
  if (!inserted) {
    it->second += e;
    if (it->second == 0) m.erase(it);
  }
}

std::string shifted_arg(Exponent shift) {
  if (shift == 0) return "s";
  return shift > 0 ? fmt::format("s+{}", shift) : fmt::format("s-{}", -shift);
}

}  // namespace

FormalProduct& FormalProduct::mul_zeta(Exponent k, const BigInt& e) {
  add_exp(zeta_, k, e);
  return *this;
}

FormalProduct& FormalProduct::mul_Z(Exponent k, const BigInt& e) {
  add_exp(bigz_, k, e);
  return *this;
}

FormalProduct& FormalProduct::mul_s2(Exponent j, const BigInt& m) {
  add_exp(s2_, j, m);
  return *this;
}

FormalProduct& FormalProduct::mul_sine(Exponent j, const BigInt& q) {
  add_exp(sine_, j, q);
  return *this;
}

BigInt FormalProduct::sine_exponent() const {
  auto it = sine_.find(0);
  return it == sine_.end() ? BigInt(0) : it->second;
}

bool FormalProduct::empty() const noexcept {
  return zeta_.empty() && bigz_.empty() && s2_.empty() && sine_.empty();
}

bool FormalProduct::is_canonical() const noexcept {
  auto only_zero = [](const ExpMap& m) {
    return m.empty() || (m.size() == 1 && m.begin()->first == 0);
  };
  return only_zero(s2_) && only_zero(sine_);
}

FormalProduct FormalProduct::inverse() const { return pow(-1); }

FormalProduct FormalProduct::pow(const BigInt& n) const {
  FormalProduct out;
  if (n == 0) return out;
  for (const auto& [k, e] : zeta_) out.zeta_.emplace(k, e * n);
  for (const auto& [k, e] : bigz_) out.bigz_.emplace(k, e * n);
  for (const auto& [k, e] : s2_) out.s2_.emplace(k, e * n);
  for (const auto& [k, e] : sine_) out.sine_.emplace(k, e * n);
  return out;
}

FormalProduct& FormalProduct::operator*=(const FormalProduct& other) {
  for (const auto& [k, e] : other.zeta_) add_exp(zeta_, k, e);
  for (const auto& [k, e] : other.bigz_) add_exp(bigz_, k, e);
  for (const auto& [k, e] : other.s2_) add_exp(s2_, k, e);
  for (const auto& [k, e] : other.sine_) add_exp(sine_, k, e);
  return *this;
}

std::string FormalProduct::to_string() const {
  std::vector<std::string> parts;
  // zeta_M(s - k): print by increasing argument shift, i.e. decreasing k.
  for (auto it = zeta_.rbegin(); it != zeta_.rend(); ++it)
    parts.push_back(fmt::format("zeta_M({})^{}", shifted_arg(-it->first), it->second.str()));
  for (auto it = bigz_.rbegin(); it != bigz_.rend(); ++it)
    parts.push_back(fmt::format("Z_M({})^{}", shifted_arg(-it->first), it->second.str()));
  for (const auto& [j, m] : s2_)
    parts.push_back(fmt::format("S_2({})^[(2-2g)*{}]", shifted_arg(j), m.str()));
  for (const auto& [j, q] : sine_)
    parts.push_back(fmt::format("(2 sin pi({}))^[(2-2g)*{}]", shifted_arg(j), q.str()));
  if (parts.empty()) return "1";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " * " + parts[i];
  return out;
}

FormalProduct canonicalize(const FormalProduct& p, const RewriteRules& rules) {
  FormalProduct out;
  for (const auto& [k, e] : p.zeta()) out.mul_zeta(k, e);
  for (const auto& [k, e] : p.bigz()) out.mul_Z(k, e);

  // Ladder: S_2(s+j) = S_2(s) prod_{i=0}^{j-1} (2 sin pi(s+i))^{-1} for j > 0,
  //         S_2(s+j) = S_2(s) prod_{i=j}^{-1} (2 sin pi(s+i))       for j < 0.
  FormalProduct sines;
  for (const auto& [k, q] : p.sine()) sines.mul_sine(k, q);
  for (const auto& [j, m] : p.s2()) {
    if (!rules.s2_ladder || j == 0) {
      out.mul_s2(j, m);
      continue;
    }
    out.mul_s2(0, m);
    if (j > 0)
      for (Exponent i = 0; i < j; ++i) sines.mul_sine(i, -m);
    else
      for (Exponent i = j; i < 0; ++i) sines.mul_sine(i, m);
  }

  for (const auto& [j, q] : sines.sine()) {
    // (2 sin pi(s+j))^{(2-2g) q} = (-1)^{j q (2-2g)} (2 sin pi s)^{(2-2g) q};
    // the sign is +1 since 2-2g is even.
    out.mul_sine(rules.collapse_sine_shifts ? 0 : j, q);
  }
  return out;
}

FormalProduct quotient(const FormalProduct& a, const FormalProduct& b, const RewriteRules& rules) {
  return canonicalize(a * b.inverse(), rules);
}

FormalProduct from_motive_zeta(const LaurentPoly& f) {
  FormalProduct p;
  for (const auto& [k, a] : f.coeffs()) p.mul_zeta(k, a);
  return p;
}

FormalProduct from_motive_Z(const LaurentPoly& f) {
  FormalProduct p;
  for (const auto& [k, a] : f.coeffs()) p.mul_Z(k, a);
  return p;
}

FormalProduct reflect_zeta(const LaurentPoly& f, Exponent weight, const RewriteRules& rules) {
  FormalProduct p;
  for (const auto& [k, a] : f.coeffs()) {
    // zeta_M((D-k) - s) = zeta_M(-u) with u = s - (D-k).
    const Exponent m = weight - k;
    p.mul_zeta(m, -a);
    p.mul_sine(-m, 2 * a);
  }
  return canonicalize(p, rules);
}

FormalProduct reflect_Z(const LaurentPoly& f, Exponent weight) {
  FormalProduct p;
  for (const auto& [k, a] : f.coeffs()) {
    // Z_M((D+1-k) - s) = Z_M(1 - u) with u = s - (D-k).
    const Exponent m = weight - k;
    p.mul_Z(m, a);
    p.mul_s2(-m, a);
    p.mul_s2(-m + 1, a);
  }
  return p;
}

FormalProduct s_motive_factor(const LaurentPoly& f, const RewriteRules& rules) {
  FormalProduct p;
  for (const auto& [k, a] : f.coeffs()) {
    p.mul_s2(-k, a);
    p.mul_s2(-k + 1, a);
  }
  return canonicalize(p, rules);
}

namespace {

Verdict make_verdict(FormalProduct lhs, FormalProduct rhs, const RewriteRules& rules = {}) {
  Verdict v;
  v.lhs_canonical = canonicalize(lhs, rules);
  v.rhs_canonical = canonicalize(rhs, rules);
  v.residual = quotient(v.lhs_canonical, v.rhs_canonical, rules);
  v.holds = v.residual.empty();
  return v;
}

}  // namespace

Verdict verify_theorem2(const LaurentPoly& f, Exponent weight) {
  Verdict v = make_verdict(reflect_zeta(f, weight), from_motive_zeta(f));
  v.coefficient_condition = satisfies_automorphy(f, weight, -1);
  v.consistent = v.holds == *v.coefficient_condition;
  return v;
}

Verdict verify_theorem3(const LaurentPoly& f, Exponent weight) {
  FormalProduct rhs = from_motive_zeta(f).inverse();
  rhs.mul_sine(0, 2 * eval_at_one(f));
  Verdict v = make_verdict(reflect_zeta(f, weight), rhs);
  v.coefficient_condition = satisfies_automorphy(f, weight, +1);
  v.consistent = v.holds == *v.coefficient_condition;
  return v;
}

Verdict verify_Z_fe(const LaurentPoly& f) {
  const AutomorphyClass cls = detect_automorphy(f);
  if (cls.kind == AutomorphyKind::None || cls.kind == AutomorphyKind::Zero)
    throw DomainError(fmt::format("Z functional equation needs Odd or Even f, got {} for {}",
                                  to_string(cls.kind), f.to_string()));
  const BigInt sign = *cls.sign;
  FormalProduct rhs = from_motive_Z(f).pow(sign) * s_motive_factor(f).pow(sign);
  return make_verdict(reflect_Z(f, *cls.weight), rhs);
}

Verdict derive_base_zeta_fe(const RewriteRules& rules) {
  // Z_M(1 - (s + j)) = Z_M(s + j) (S_2(s + j) S_2(s + j + 1))^{2-2g}
  auto z_reflection = [](Exponent j) {
    FormalProduct p;
    p.mul_Z(-j, 1).mul_s2(j, 1).mul_s2(j + 1, 1);
    return p;
  };
  // zeta_M(-s) = Z_M(1-s) / Z_M(-s), with Z_M(-s) = Z_M(1 - (s+1)).
  FormalProduct lhs = z_reflection(0) * z_reflection(1).inverse();
  // zeta_M(s) = Z_M(s+1) / Z_M(s)
  lhs.mul_Z(-1, 1).mul_Z(0, -1);
  FormalProduct rhs;
  rhs.mul_sine(0, 2);
  return make_verdict(lhs, rhs, rules);
}

}  // namespace stz
