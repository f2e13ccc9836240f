#include "stz/tate_motive.hpp"

#include "stz/errors.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>

namespace stz {

void LaurentPoly::add_term(Exponent k, const BigInt& a) {
  if (a == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(k, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LaurentPoly LaurentPoly::normalize(const std::vector<std::pair<Exponent, BigInt>>& raw) {
  LaurentPoly f;
  for (const auto& [k, a] : raw) f.add_term(k, a);
  return f;
}

LaurentPoly LaurentPoly::monomial(Exponent k, BigInt a) {
  LaurentPoly f;
  f.add_term(k, a);
  return f;
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  std::vector<std::pair<Exponent, BigInt>> raw;
  if (s.empty()) return {};
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string_view item(s.data() + pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw FormatError(fmt::format("polynomial term '{}' is not of the form k=a", item));
    const auto key = item.substr(0, eq);
    Exponent k{};
    auto [kp, kec] = std::from_chars(key.data(), key.data() + key.size(), k);
    if (kec != std::errc{} || kp != key.data() + key.size())
      throw FormatError(fmt::format("bad exponent '{}'", key));
    std::string value(item.substr(eq + 1));
    const bool digits_ok = [&] {
      std::size_t i = (value[0] == '-' || value[0] == '+') ? 1 : 0;
      if (i == value.size()) return false;
      for (; i < value.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(value[i]))) return false;
      return true;
    }();
    if (!digits_ok) throw FormatError(fmt::format("bad coefficient '{}'", value));
    if (value[0] == '+') value.erase(0, 1);
    raw.emplace_back(k, BigInt(value));
    pos = comma + 1;
  }
  return normalize(raw);
}

BigInt LaurentPoly::coeff(Exponent k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

Exponent LaurentPoly::min_exponent() const {
  if (is_zero()) throw DomainError("min_exponent of the zero polynomial");
  return coeffs_.begin()->first;
}

Exponent LaurentPoly::max_exponent() const {
  if (is_zero()) throw DomainError("max_exponent of the zero polynomial");
  return coeffs_.rbegin()->first;
}

std::string LaurentPoly::to_spec() const {
  std::string out;
  for (const auto& [k, a] : coeffs_) {
    if (!out.empty()) out += ',';
    out += fmt::format("{}={}", k, a.str());
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  // Highest power first.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [k, a] = *it;
    const bool negative = a < 0;
    const BigInt mag = negative ? BigInt(-a) : a;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono;
    if (k == 0)
      mono = mag.str();
    else {
      if (mag != 1) mono = mag.str() + "*";
      mono += k == 1 ? "x" : fmt::format("x^{}", k);
    }
    out += mono;
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [k, a] : out.coeffs_) a = -a;
  return out;
}

LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out = f;
  for (const auto& [k, a] : g.coeffs_) out.add_term(k, a);
  return out;
}

LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) { return f + (-g); }

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out;
  for (const auto& [i, a] : f.coeffs_)
    for (const auto& [j, b] : g.coeffs_) out.add_term(i + j, a * b);
  return out;
}

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

LaurentPoly binom_power(unsigned r) {
  std::vector<std::pair<Exponent, BigInt>> raw;
  BigInt c = 1;  // binomial(r, k)
  for (unsigned k = 0; k <= r; ++k) {
    raw.emplace_back(static_cast<Exponent>(k), ((r - k) % 2 == 0) ? c : BigInt(-c));
    c = c * (r - k) / (k + 1);
  }
  return LaurentPoly::normalize(raw);
}

BigInt eval_at_one(const LaurentPoly& f) {
  BigInt sum = 0;
  for (const auto& [k, a] : f.coeffs()) sum += a;
  return sum;
}

LaurentPoly reverse(const LaurentPoly& f, Exponent weight) {
  std::vector<std::pair<Exponent, BigInt>> raw;
  raw.reserve(f.coeffs().size());
  for (const auto& [k, a] : f.coeffs()) raw.emplace_back(weight - k, a);
  return LaurentPoly::normalize(raw);
}

bool satisfies_automorphy(const LaurentPoly& f, Exponent weight, int sign) {
  for (const auto& [k, a] : f.coeffs()) {
    const BigInt mirrored = f.coeff(weight - k);
    if (sign > 0 ? mirrored != a : mirrored != -a) return false;
  }
  return true;
}

AutomorphyClass detect_automorphy(const LaurentPoly& f) {
  if (f.is_zero()) return {AutomorphyKind::Zero, std::nullopt, std::nullopt};
  const Exponent weight = f.min_exponent() + f.max_exponent();
  if (satisfies_automorphy(f, weight, -1)) return {AutomorphyKind::Odd, weight, -1};
  if (satisfies_automorphy(f, weight, +1)) return {AutomorphyKind::Even, weight, +1};
  return {AutomorphyKind::None, std::nullopt, std::nullopt};
}

const char* to_string(AutomorphyKind kind) {
  switch (kind) {
    case AutomorphyKind::Odd: return "Odd";
    case AutomorphyKind::Even: return "Even";
    case AutomorphyKind::None: return "None";
    case AutomorphyKind::Zero: return "Zero";
  }
  return "?";
}

}  // namespace stz
