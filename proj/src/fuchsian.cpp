#include "stz/fuchsian.hpp"

#include "stz/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace stz {

Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
  Mat2 m{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
         x.c * y.b + x.d * y.d};
  // Drift below the rounding noise of ad - bc is not measurable; rescaling
  // by it would inject error into the large entries.
  const double det = m.det();
  const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(m.a * m.d) + std::abs(m.b * m.c));
  if (std::abs(det - 1.0) > std::max(1e-13, noise) && det > 0.0) {
    const double r = 1.0 / std::sqrt(det);
    m = {m.a * r, m.b * r, m.c * r, m.d * r};
  }
  return m;
}

Mat2 Mat2::sign_normalized() const noexcept {
  return trace() < 0.0 ? Mat2{-a, -b, -c, -d} : *this;
}

double Mat2::max_abs() const noexcept {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

Mat2 power(const Mat2& m, int k) {
  if (k < 0) return power(m.inverse(), -k);
  Mat2 out = Mat2::identity();
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

bool same_projective(const Mat2& x, const Mat2& y, double rel_tol) {
  const Mat2 p = x.sign_normalized(), q = y.sign_normalized();
  const double scale = std::max({1.0, p.max_abs(), q.max_abs()});
  const double tol = rel_tol * scale;
  return std::abs(p.a - q.a) <= tol && std::abs(p.b - q.b) <= tol &&
         std::abs(p.c - q.c) <= tol && std::abs(p.d - q.d) <= tol;
}

double translation_length(double trace_abs) { return 2.0 * std::acosh(0.5 * trace_abs); }

std::uint64_t Word::key() const noexcept {
  std::uint64_t k = static_cast<std::uint64_t>(size) << 56;
  for (int i = 0; i < size; ++i) k |= static_cast<std::uint64_t>(letters[i]) << (4 * (13 - i));
  return k;
}

FuchsianGroup::FuchsianGroup(std::vector<Mat2> generators, std::string label, int genus,
                             const std::vector<std::string>& relators)
    : generators_(std::move(generators)), label_(std::move(label)), genus_(genus) {
  const int n = static_cast<int>(generators_.size());
  if (n == 0 || 2 * n > kMaxLetters)
    throw DomainError(fmt::format("a group needs 1..{} generators, got {}", kMaxLetters / 2, n));
  for (int i = 0; i < n; ++i) {
    const Mat2& g = generators_[i];
    if (std::abs(g.det() - 1.0) > 1e-12)
      throw DomainError(fmt::format("generator {} has determinant {}", i, g.det()));
    if (!(std::abs(g.trace()) > 2.0))
      throw DomainError(fmt::format("generator {} is not hyperbolic (trace {})", i, g.trace()));
  }
  letters_ = generators_;
  for (const Mat2& g : generators_) letters_.push_back(g.inverse());
  for (const std::string& r : relators) relators_.push_back(parse(r));
}

Mat2 FuchsianGroup::evaluate(const Word& w) const {
  Mat2 m = Mat2::identity();
  for (int i = 0; i < w.size; ++i) m = m * letters_[w[i]];
  return m;
}

std::string FuchsianGroup::spell(const Word& w) const {
  const int n = static_cast<int>(generators_.size());
  std::string s;
  for (int i = 0; i < w.size; ++i) {
    const int l = w[i];
    s.push_back(l < n ? static_cast<char>('a' + l) : static_cast<char>('A' + (l - n)));
  }
  return s;
}

Word FuchsianGroup::parse(std::string_view text) const {
  const int n = static_cast<int>(generators_.size());
  if (text.size() > static_cast<std::size_t>(kMaxWordLen))
    throw FormatError(fmt::format("word '{}' longer than {}", text, kMaxWordLen));
  Word w;
  for (char ch : text) {
    int l = -1;
    if (ch >= 'a' && ch < 'a' + n) l = ch - 'a';
    if (ch >= 'A' && ch < 'A' + n) l = ch - 'A' + n;
    if (l < 0) throw FormatError(fmt::format("letter '{}' is not a generator of {}", ch, label_));
    w.push_back(static_cast<std::uint8_t>(l));
  }
  return w;
}

double bolza_systole() { return 2.0 * std::acosh(1.0 + std::numbers::sqrt2); }

FuchsianGroup bolza_group() {
  const double half = 0.5 * bolza_systole();
  const Mat2 translate{std::exp(half), 0.0, 0.0, std::exp(-half)};
  std::vector<Mat2> gens;
  for (int k = 0; k < 4; ++k) {
    // Elliptic rotation about i through the angle k pi / 4.
    const double t = 0.5 * k * std::numbers::pi / 4.0;
    const Mat2 rot{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    gens.push_back(rot * translate * rot.inverse());
  }
  return FuchsianGroup(std::move(gens), "bolza", 2, {"aBcDAbCd"});
}

namespace {

void relator_dfs(const FuchsianGroup& group, int length, double tol, Word& w, const Mat2& m,
                 std::vector<Word>& out) {
  if (w.size == length) {
    if (group.inverse_letter(w[w.size - 1]) == w[0]) return;
    if (same_projective(m, Mat2::identity(), tol)) out.push_back(w);
    return;
  }
  for (int l = 0; l < group.letter_count(); ++l) {
    const auto letter = static_cast<std::uint8_t>(l);
    if (w.size > 0 && group.inverse_letter(w[w.size - 1]) == letter) continue;
    w.push_back(letter);
    relator_dfs(group, length, tol, w, m * group.letter(letter), out);
    --w.size;
  }
}

}  // namespace

std::vector<Word> find_relator_words(const FuchsianGroup& group, int length, double tol) {
  if (length < 1 || length > kMaxWordLen)
    throw DomainError(fmt::format("relator length must be in [1, {}]", kMaxWordLen));
  std::vector<Word> out;
  Word w;
  relator_dfs(group, length, tol, w, Mat2::identity(), out);
  return out;
}

}  // namespace stz
