// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include "family.hpp"
#include "stz/fe_engine.hpp"
#include "stz/fuchsian.hpp"
#include "stz/multigamma.hpp"
#include "stz/spectrum.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace stz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  fmt::print("{} {:>2}  {}\n", pass ? "PASS" : "FAIL", id, detail);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void run(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, fmt::format("exception: {}", e.what()));
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

void criterion_1() {
  const auto t0 = Clock::now();
  long cases = 0, agree = 0;
  testing::for_each_small_poly([&](const LaurentPoly& f) {
    for (Exponent d = -8; d <= 8; ++d) {
      const Verdict v = verify_theorem2(f, d);
      ++cases;
      if (v.holds == satisfies_automorphy(f, d, -1)) ++agree;
    }
  });
  const double t = seconds_since(t0);
  report(1, cases == 78125L * 17 && agree == cases && t < 120,
         fmt::format("odd-case equation vs a(D-k) = -a(k): {}/{} agree ({:.1f} s)", agree, cases, t));
}

void criterion_2() {
  const auto t0 = Clock::now();
  long cases = 0, agree = 0, sine_ok = 0;
  testing::for_each_small_poly([&](const LaurentPoly& f) {
    const BigInt expected_sine = 2 * eval_at_one(f);
    for (Exponent d = -8; d <= 8; ++d) {
      const Verdict v = verify_theorem3(f, d);
      ++cases;
      if (v.holds == satisfies_automorphy(f, d, +1)) ++agree;
      // (4-4g) f(1) is 2 f(1) in (2-2g) units, on both sides.
      if (reflect_zeta(f, d).sine_exponent() == expected_sine &&
          v.rhs_canonical.sine_exponent() == expected_sine && v.rhs_canonical.sine().size() <= 1)
        ++sine_ok;
    }
  });
  const double t = seconds_since(t0);
  report(2, cases == 78125L * 17 && agree == cases && sine_ok == cases,
         fmt::format("even-case equation vs a(D-k) = a(k): {}/{} agree, sine exponent (4-4g)f(1) "
                     "{}/{} ({:.1f} s)",
                     agree, cases, sine_ok, cases, t));
}

void criterion_3() {
  const LaurentPoly g = P("-1=1,0=-1");
  std::vector<std::pair<std::string, LaurentPoly>> fs{{"x^-1 - 1", g}, {"(x^-1 - 1)^2", mul(g, g)}};
  for (unsigned r = 1; r <= 6; ++r) fs.emplace_back(fmt::format("(x - 1)^{}", r), binom_power(r));
  fs.emplace_back("x (x - 1)^3", mul(P("1=1"), binom_power(3)));
  int held = 0;
  std::string failed;
  for (const auto& [name, f] : fs) {
    if (verify_Z_fe(f).holds)
      ++held;
    else
      failed += " " + name;
  }
  // Factor entering the equation for x^-1 - 1 is S_{M(f)}^C with C = -1.
  const auto cls = detect_automorphy(g);
  const FormalProduct factor = s_motive_factor(g).pow(*cls.sign);
  FormalProduct expected;
  expected.mul_sine(0, 2);
  const bool sine_ok = factor == expected;
  const bool square_empty = s_motive_factor(mul(g, g)).empty();
  report(3, held == static_cast<int>(fs.size()) && sine_ok && square_empty,
         fmt::format("Z equation holds for {}/{} motives{}; x^-1 - 1 factor = {} (want (2 sin pi "
                     "s)^(4-4g)); (x^-1 - 1)^2 gamma factor {}",
                     held, fs.size(), failed.empty() ? "" : " (failed:" + failed + ")",
                     factor.to_string(), square_empty ? "empty" : "NOT empty"));
}

void criterion_4() {
  const Verdict v = derive_base_zeta_fe();
  RewriteRules control;
  control.collapse_sine_shifts = false;
  const Verdict neg = derive_base_zeta_fe(control);
  report(4, v.holds && !neg.holds,
         fmt::format("zeta_M(-s) zeta_M(s) = {} derived: {}; negative control without sine "
                     "collapse: {} (residual {})",
                     v.rhs_canonical.to_string(), v.holds ? "holds" : "fails",
                     neg.holds ? "holds" : "fails", neg.residual.to_string()));
}

void criterion_5() {
  const SpecialEvaluator ev;
  double worst = 0.0;
  std::size_t points = 0;
  bool pass = true;
  for (int g : {2, 3}) {
    const IdentityReport rep = check_fe_integral(ev, SurfaceParams(g));
    points += rep.rows.size();
    for (const auto& r : rep.rows) {
      worst = std::max(worst, r.error);
      pass = pass && r.error < 1e-9;
    }
    pass = pass && rep.rows.size() == 17;
  }
  report(5, pass, fmt::format("integral factor vs (S_2(s) S_2(s+1))^(2-2g): {} points, max rel "
                              "error {:.2e} (< 1e-9)",
                              points, worst));
}

void criterion_6() {
  const SpecialEvaluator ev;
  const IdentityReport ode = check_s2_ode(ev);
  const IdentityReport ladder = check_s2_ladder(ev);
  double ode_worst = 0.0, ladder_worst = 0.0;
  for (const auto& r : ode.rows) ode_worst = std::max(ode_worst, r.error);
  for (const auto& r : ladder.rows) ladder_worst = std::max(ladder_worst, r.error);
  const bool pass = ode.pass() && ode.rows.size() == 9 && ode_worst < 1e-6 && ladder.pass() &&
                    ladder_worst < 1e-10;
  report(6, pass, fmt::format("S_2 ODE max abs error {:.2e} (< 1e-6, 9 points); ladders max rel "
                              "error {:.2e} (< 1e-10)",
                              ode_worst, ladder_worst));
}

void criterion_7() {
  const SpecialEvaluator a({24, 12, 1e-12});
  const SpecialEvaluator b({48, 16, 1e-12});
  const IdentityReport red = check_reduction(a);
  std::string rows;
  for (const auto& r : red.rows) rows += fmt::format(" {}:{:.1e}/{:.1e}", r.label, r.error, r.tolerance);
  const double g2 = a.gamma_r(2, 1.0).value;
  const double direct = std::exp(b.hurwitz_zeta_dw(-1.0, 1.0).value.real());
  const double diff = std::abs(g2 - direct);
  report(7, red.pass() && red.rows.size() == 3 && diff < 1e-11,
         fmt::format("zeta_2 vs double sum (error/bound):{}; Gamma_2(1) = {:.15f} vs "
                     "exp(zeta'(-1)) = {:.15f}, diff {:.1e}",
                     rows, g2, direct, diff));
}

// Shared by criteria 8-10.
LengthSpectrum bolza_l8;
std::filesystem::path spectrum_file;

void criterion_8() {
  const FuchsianGroup g = bolza_group();
  double trace_err = 0.0;
  for (const Mat2& m : g.generators())
    trace_err = std::max(trace_err, std::abs(std::abs(m.trace()) - (2 + 2 * std::sqrt(2.0))));
  const auto relators = find_relator_words(g, 8);

  const auto dir = std::filesystem::temp_directory_path() / "stz_acceptance";
  std::filesystem::create_directories(dir);
  const auto f1 = dir / "bolza_l8_t1.txt", f8 = dir / "bolza_l8_t8.txt";
  auto t0 = Clock::now();
  const LengthSpectrum s1 = enumerate_spectrum(g, {8, 1});
  save_spectrum(s1, f1);
  const double t1 = seconds_since(t0);
  t0 = Clock::now();
  save_spectrum(enumerate_spectrum(g, {8, 8}), f8);
  const double t8 = seconds_since(t0);
  const bool identical = slurp(f1) == slurp(f8);
  const double systole_err = std::abs(s1.entries.at(0).length - 2 * std::acosh(1 + std::sqrt(2.0)));
  bolza_l8 = s1;
  spectrum_file = f1;
  report(8, trace_err < 1e-12 && relators.size() == 16 && identical && systole_err < 1e-10 &&
                t1 < 300 && t8 < 300,
         fmt::format("trace error {:.1e}; {} length-8 relator words; word length 8: {} classes in "
                     "{} lengths, files {} across 1/8 threads ({:.1f} s / {:.1f} s); systole "
                     "error {:.1e} (multiplicity {})",
                     trace_err, relators.size(), s1.total_count(), s1.entries.size(),
                     identical ? "byte-identical" : "DIFFER", t1, t8, systole_err,
                     s1.entries.at(0).multiplicity));
}

void criterion_9() {
  if (bolza_l8.entries.empty()) throw std::runtime_error("no spectrum from criterion 8");
  double worst = 0.0;
  for (double s : {1.5, 2.0, 3.0}) {
    const double z = euler_zeta(s, bolza_l8).value;
    const double ratio = selberg_Z(s + 1, bolza_l8).value / selberg_Z(s, bolza_l8).value;
    worst = std::max(worst, std::abs(z / ratio - 1.0));
  }
  report(9, worst < 1e-13,
         fmt::format("zeta_M(s) vs Z_M(s+1)/Z_M(s) at s = 1.5, 2, 3: max rel error {:.1e}", worst));
}

void criterion_10() {
  if (spectrum_file.empty()) throw std::runtime_error("no spectrum file from criterion 8");
  const LengthSpectrum sp = load_spectrum(spectrum_file);
  // Brute force over the raw file rows, independent of the parser.
  std::vector<std::pair<double, unsigned long long>> rows;
  {
    std::ifstream is(spectrum_file);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      double len;
      unsigned long long mult;
      ls >> len >> mult;
      rows.emplace_back(len, mult);
    }
  }
  std::vector<double> xs;
  const double lo = 1.0, hi = sp.horizon;
  const int n = 200;
  for (int i = 1; i <= n; ++i) xs.push_back(std::exp(lo + (hi - lo) * i / n));
  const PgtTable table = pgt_table(sp, xs);
  bool counts_ok = table.rows.size() == xs.size(), monotone = true, ratios_ok = true;
  std::uint64_t prev = 0;
  for (const auto& r : table.rows) {
    unsigned long long brute = 0;
    for (const auto& [len, mult] : rows)
      if (std::exp(len) <= r.x) brute += mult;
    counts_ok = counts_ok && brute == r.count && r.within_horizon;
    monotone = monotone && r.count >= prev;
    prev = r.count;
    ratios_ok = ratios_ok && std::abs(r.ratio - r.count * std::log(r.x) / r.x) <= 1e-12 * (1 + r.ratio);
  }
  const auto& last = table.rows.back();
  report(10, counts_ok && monotone && ratios_ok && table.warnings.empty(),
         fmt::format("{} points in (e, exp(horizon)]: counts match brute force {}, monotone {}, "
                     "ratios consistent {}; last x = {:.6g}, count {}, ratio {:.4f} (trend to 1 "
                     "not asserted)",
                     table.rows.size(), counts_ok ? "yes" : "NO", monotone ? "yes" : "NO",
                     ratios_ok ? "yes" : "NO", last.x, last.count, last.ratio));
}

}  // namespace

int main() {
  run(1, criterion_1);
  run(2, criterion_2);
  run(3, criterion_3);
  run(4, criterion_4);
  run(5, criterion_5);
  run(6, criterion_6);
  run(7, criterion_7);
  run(8, criterion_8);
  run(9, criterion_9);
  run(10, criterion_10);
  fmt::print("{} of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
