#pragma once

// SL(2, R) matrices acting on the upper half-plane, finitely generated
// Fuchsian groups and words over their generators.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stz {

/// 2x2 real matrix of determinant 1. Products renormalize by sqrt(det) once
/// the determinant drifts by more than 1e-13 and by more than the rounding
/// noise of ad - bc.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }

  double det() const noexcept { return a * d - b * c; }
  double trace() const noexcept { return a + d; }
  Mat2 inverse() const noexcept { return {d, -b, -c, a}; }
  /// Representative with non-negative trace (PSL(2, R) normal form).
  Mat2 sign_normalized() const noexcept;
  double max_abs() const noexcept;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) noexcept;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 power(const Mat2& m, int k);
/// Entry-wise closeness relative to max(1, |entries|), up to sign.
bool same_projective(const Mat2& x, const Mat2& y, double rel_tol);

/// Translation length 2 arccosh(|tr| / 2) of a hyperbolic element.
double translation_length(double trace_abs);

constexpr int kMaxLetters = 16;
constexpr int kMaxWordLen = 12;

/// Word over generators g_0..g_{n-1} (letters 0..n-1) and their inverses
/// (letters n..2n-1). Printed as a, b, ... for generators and A, B, ... for
/// inverses.
struct Word {
  std::array<std::uint8_t, kMaxWordLen> letters{};
  std::uint8_t size = 0;

  void push_back(std::uint8_t l) { letters[size++] = l; }
  std::uint8_t operator[](int i) const { return letters[i]; }
  /// Orders by length, then lexicographically.
  std::uint64_t key() const noexcept;
  friend bool operator==(const Word& x, const Word& y) noexcept { return x.key() == y.key(); }
};

class FuchsianGroup {
public:
  /// Throws DomainError unless every generator is hyperbolic (|tr| > 2).
  /// Relators are spelled with a, b, ... for generators and A, B, ... for
  /// inverses.
  FuchsianGroup(std::vector<Mat2> generators, std::string label, int genus,
                const std::vector<std::string>& relators = {});

  const std::vector<Mat2>& generators() const noexcept { return generators_; }
  const std::string& label() const noexcept { return label_; }
  int genus() const noexcept { return genus_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }

  int letter_count() const noexcept { return static_cast<int>(letters_.size()); }
  std::uint8_t inverse_letter(std::uint8_t l) const noexcept {
    const int n = static_cast<int>(generators_.size());
    return static_cast<std::uint8_t>(l < n ? l + n : l - n);
  }
  /// Matrix of a letter (generator or inverse).
  const Mat2& letter(std::uint8_t l) const noexcept { return letters_[l]; }
  Mat2 evaluate(const Word& w) const;

  std::string spell(const Word& w) const;
  /// Throws FormatError on letters outside the generating set.
  Word parse(std::string_view text) const;

private:
  std::vector<Mat2> generators_;
  std::vector<Mat2> letters_;
  std::string label_;
  int genus_;
  std::vector<Word> relators_;
};

/// Hyperbolic length of the Bolza systole, 2 arccosh(1 + sqrt 2).
double bolza_systole();

/// Side pairings of the regular octagon: translations by the systole length
/// along the geodesics through i at angles k pi / 4, k = 0..3, with the
/// relator a B c D A b C d.
FuchsianGroup bolza_group();

/// Every cyclically reduced word of the given length evaluating to +-I
/// within tol entry-wise.
std::vector<Word> find_relator_words(const FuchsianGroup& group, int length, double tol = 1e-9);

}  // namespace stz
