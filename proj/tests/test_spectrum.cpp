#include "stz/errors.hpp"
#include "stz/fuchsian.hpp"
#include "stz/spectrum.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace stz;

namespace {

const FuchsianGroup& bolza() {
  static const FuchsianGroup g = bolza_group();
  return g;
}

const LengthSpectrum& spectrum_at(int len) {
  static std::vector<LengthSpectrum> cache;
  while (static_cast<int>(cache.size()) < len)
    cache.push_back(enumerate_spectrum(bolza(), {static_cast<int>(cache.size()) + 1, 1}));
  return cache[len - 1];
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

LengthSpectrum small_spectrum() {
  LengthSpectrum sp;
  sp.entries = {{3.0, 4}, {4.5, 2}, {5.25, 6}};
  sp.source = "hand";
  sp.horizon = 4.5;
  return sp;
}

}  // namespace

TEST_CASE("Mat2") {
  const Mat2 m{2.0, 1.0, 1.0, 1.0};
  CHECK(m.det() == 1.0);
  const Mat2 p = m * m.inverse();
  CHECK(same_projective(p, Mat2::identity(), 1e-15));
  CHECK(same_projective(Mat2{-1, 0, 0, -1}, Mat2::identity(), 1e-15));
  CHECK(same_projective(power(m, 3), m * m * m, 1e-15));
  CHECK(translation_length(2 * std::cosh(1.5)) == doctest::Approx(3.0));
}

TEST_CASE("Bolza generators") {
  const double ell = bolza_systole();
  CHECK(ell == doctest::Approx(2 * std::acosh(1 + std::sqrt(2.0))).epsilon(1e-15));
  REQUIRE(bolza().generators().size() == 4);
  for (const Mat2& g : bolza().generators()) {
    CHECK(std::abs(g.det() - 1.0) < 1e-13);
    CHECK(std::abs(std::abs(g.trace()) - 2 * std::cosh(ell / 2)) < 1e-12);
    CHECK(std::abs(std::abs(g.trace()) - (2 + 2 * std::sqrt(2.0))) < 1e-12);
  }
}

TEST_CASE("Bolza relator orbit") {
  const auto words = find_relator_words(bolza(), 8);
  // Rotations of one relator and of its inverse.
  CHECK(words.size() == 16);
  const Word rel = bolza().relators().at(0);
  for (const Word& w : words) CHECK(same_projective(bolza().evaluate(w), Mat2::identity(), 1e-9));
  CHECK(same_projective(bolza().evaluate(rel), Mat2::identity(), 1e-9));
  CHECK(std::count(words.begin(), words.end(), rel) == 1);
  CHECK(find_relator_words(bolza(), 4).empty());
  CHECK(find_relator_words(bolza(), 6).empty());
}

TEST_CASE("word spelling") {
  const Word w = bolza().parse("aBcD");
  CHECK(w.size == 4);
  CHECK(bolza().spell(w) == "aBcD");
  CHECK_THROWS_AS(bolza().parse("aZ"), FormatError);
}

TEST_CASE("non-hyperbolic generators are rejected") {
  CHECK_THROWS_AS(FuchsianGroup({Mat2::identity()}, "id", 2), DomainError);
  CHECK_THROWS_AS(FuchsianGroup({Mat2{1, 1, 0, 1}}, "parabolic", 2), DomainError);
}

TEST_CASE("word length one") {
  const auto& sp = spectrum_at(1);
  REQUIRE(sp.entries.size() == 1);
  CHECK(std::abs(sp.entries[0].length - bolza_systole()) < 1e-10);
  CHECK(sp.entries[0].multiplicity == 8);
  CHECK_THROWS_AS(enumerate_spectrum(bolza(), {0, 1}), DomainError);
}

TEST_CASE("systole multiplicity") {
  for (int len = 3; len <= 6; ++len) {
    const auto& sp = spectrum_at(len);
    CHECK(std::abs(sp.entries[0].length - bolza_systole()) < 1e-10);
    CHECK(sp.entries[0].multiplicity == 24);
  }
}

TEST_CASE("growing word length: monotone, prefix stable, even") {
  for (int len = 1; len < 6; ++len) {
    const auto& a = spectrum_at(len);
    const auto& b = spectrum_at(len + 1);
    CHECK(b.entries.size() >= a.entries.size());
    CHECK(b.total_count() >= a.total_count());
    std::vector<SpectrumEntry> pa, pb;
    for (const auto& e : a.entries)
      if (e.length < a.horizon - 1e-9) pa.push_back(e);
    for (const auto& e : b.entries)
      if (e.length < a.horizon - 1e-9) pb.push_back(e);
    CHECK(pa == pb);
    for (const auto& e : b.entries) CHECK(e.multiplicity % 2 == 0);
    CHECK(b.horizon <= b.max_length());
  }
}

TEST_CASE("enumeration is thread-count independent") {
  const auto one = format_spectrum(enumerate_spectrum(bolza(), {6, 1}));
  const auto many = format_spectrum(enumerate_spectrum(bolza(), {6, 5}));
  CHECK(one == many);
  CHECK(one == format_spectrum(spectrum_at(6)));
}

TEST_CASE("catalogue words evaluate to their lengths") {
  const auto cat = enumerate_geodesics(bolza(), {5, 1});
  CHECK(cat.geodesics.size() == spectrum_at(5).total_count());
  for (const auto& g : cat.geodesics) {
    const Mat2 m = bolza().evaluate(bolza().parse(g.word));
    CHECK(std::abs(std::abs(m.trace()) - g.trace_abs) < 1e-9 * g.trace_abs);
    CHECK(g.length == doctest::Approx(2 * std::acosh(g.trace_abs / 2)).epsilon(1e-14));
    CHECK(g.norm == doctest::Approx(std::exp(g.length)).epsilon(1e-12));
    CHECK(g.word_length == static_cast<int>(g.word.size()));
  }
}

TEST_CASE("save and load") {
  const auto path = temp_file("stz_spectrum_roundtrip.txt");
  const auto& sp = spectrum_at(5);
  save_spectrum(sp, path);
  CHECK(load_spectrum(path) == sp);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
  CHECK(parse_spectrum(format_spectrum(small_spectrum())) == small_spectrum());
}

TEST_CASE("malformed spectrum files") {
  const std::string head =
      "# genus=2\n# source=x\n# horizon=3.5\n# convention=gamma-and-inverse-distinct\n";
  auto line_of = [](const std::string& text) {
    try {
      parse_spectrum(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of(head + "3 2\n4 2\n") == -1);
  CHECK(line_of(head + "4 2\n3 2\n") == 6);
  CHECK(line_of(head + "3 2\n3 2\n") == 6);
  CHECK(line_of(head + "3 0\n") == 5);
  CHECK(line_of(head + "3 x\n") == 5);
  CHECK(line_of(head + "-3 2\n") == 5);
  CHECK(line_of(head + "3\n") == 5);
  CHECK(line_of("# source=x\n# horizon=3.5\n# convention=gamma-and-inverse-distinct\n3 2\n") == 4);
  CHECK_THROWS_AS(parse_spectrum("# source=x\n# horizon=1\n# convention=gamma-and-inverse-distinct\n"),
                  FormatError);
  CHECK(line_of("# genus=1\n") == 1);
  CHECK(line_of("# genus=2\n# source=x\n# horizon=3.5\n# convention=unoriented\n") == 4);
  CHECK(line_of(head + "# colour=blue\n") == 5);
  CHECK(line_of(head + "3 2\n# genus=2\n") == 6);
  CHECK_THROWS_AS(load_spectrum(temp_file("stz_no_such_file.txt")), FormatError);
}

TEST_CASE("selberg_Z") {
  const LengthSpectrum empty;
  CHECK(selberg_Z(2.0, empty).value == 1.0);
  LengthSpectrum one;
  one.entries = {{3.0571, 1}};
  one.horizon = 3.0571;
  double direct = 1.0;
  for (int n = 0; n < 40; ++n) direct *= 1.0 - std::exp(-3.0571 * (2 + n));
  CHECK(selberg_Z(2.0, one).value == doctest::Approx(direct).epsilon(1e-15));
  const double v = selberg_Z(4.0, spectrum_at(5)).value;
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK_THROWS_AS(selberg_Z(1.0, one), DomainError);
  CHECK_THROWS_AS(selberg_Z(1.0005, one), DomainError);
}

TEST_CASE("euler_zeta and telescoping") {
  const LengthSpectrum empty;
  CHECK(euler_zeta(2.0, empty).value == 1.0);
  for (int len : {1, 4, 6}) {
    const auto& sp = spectrum_at(len);
    for (double s : {1.5, 2.0, 3.0}) {
      const double z = euler_zeta(s, sp).value;
      CHECK(z > 1.0);
      const double ratio = selberg_Z(s + 1, sp).value / selberg_Z(s, sp).value;
      CHECK(std::abs(z / ratio - 1.0) < 1e-13);
    }
  }
  CHECK_THROWS_AS(euler_zeta(0.5, empty), DomainError);
}

TEST_CASE("zeta_motive_numeric") {
  const auto& sp = spectrum_at(4);
  CHECK(zeta_motive_numeric(LaurentPoly::constant(1), 2.5, sp).value ==
        doctest::Approx(euler_zeta(2.5, sp).value).epsilon(1e-15));
  const auto f = LaurentPoly::parse("1=1,0=-1");
  CHECK(zeta_motive_numeric(f, 4.0, sp).value ==
        doctest::Approx(euler_zeta(3.0, sp).value / euler_zeta(4.0, sp).value).epsilon(1e-14));
  try {
    zeta_motive_numeric(f, 1.5, sp);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("k = 1") != std::string::npos);
  }
  CHECK(Z_motive_numeric(LaurentPoly::parse("-1=1,0=-1"), 2.0, sp).value ==
        doctest::Approx(euler_zeta(2.0, sp).value).epsilon(1e-13));
}

TEST_CASE("geodesic_count") {
  const auto& sp = spectrum_at(1);
  CHECK(geodesic_count(std::exp(sp.entries[0].length) * 0.999, sp) == 0);
  CHECK(geodesic_count(std::exp(sp.entries[0].length), sp) == 8);
  const auto& sp5 = spectrum_at(5);
  CHECK(geodesic_count(1e300, sp5) == sp5.total_count());
  CHECK(geodesic_count(1.0, sp5) == 0);
}

TEST_CASE("pgt_table") {
  const auto& sp = spectrum_at(5);
  CHECK(pgt_table(sp, {}).rows.empty());
  const double x = std::exp(sp.entries[0].length) * 1.001;
  const auto t = pgt_table(sp, {x});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].count == 24);
  CHECK(t.rows[0].ratio == doctest::Approx(24 * std::log(x) / x));
  CHECK(t.warnings.empty());
  const auto far = pgt_table(sp, {2.0, std::exp(sp.horizon + 1)});
  CHECK(far.warnings.size() == 2);
  CHECK_FALSE(far.rows[0].within_horizon);
  CHECK_FALSE(far.rows[1].within_horizon);
}

TEST_CASE("spectrum validation") {
  auto sp = small_spectrum();
  CHECK_NOTHROW(sp.validate());
  sp.genus = 1;
  CHECK_THROWS_AS(sp.validate(), DomainError);
  sp = small_spectrum();
  sp.horizon = 10.0;
  CHECK_THROWS_AS(sp.validate(), DomainError);
  sp = small_spectrum();
  sp.entries[1].length = 3.0 + 1e-12;
  CHECK_THROWS_AS(sp.validate(), DomainError);
}
