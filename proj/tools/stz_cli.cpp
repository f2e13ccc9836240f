// Command-line front end: motive analysis, functional-equation verification,
// special functions, Bolza spectra, Euler products and prime geodesic tables.
//
// Exit codes: 0 success, 1 verification or identity check failed, 2 usage or
// domain error.

#include "stz/errors.hpp"
#include "stz/fe_engine.hpp"
#include "stz/multigamma.hpp"
#include "stz/spectrum.hpp"
#include "stz/tate_motive.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

struct Globals {
  std::string out;
  unsigned threads = 1;
  int em_cutoff = stz::EvaluatorConfig{}.em_cutoff;
  int bernoulli_terms = stz::EvaluatorConfig{}.bernoulli_terms;
  double tolerance = stz::EvaluatorConfig{}.target_rel_tol;
  int genus = 2;

  stz::SpecialEvaluator evaluator() const {
    return stz::SpecialEvaluator({em_cutoff, bernoulli_terms, tolerance});
  }
};

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot write " + g.out);
  os << text;
}

std::complex<double> parse_complex(const std::string& text) {
  // "re" or "re,im"
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? text.size() : comma)) throw std::invalid_argument("");
    if (comma == std::string::npos) return {re, 0.0};
    const std::string im_text = text.substr(comma + 1);
    const double im = std::stod(im_text, &used);
    if (used != im_text.size()) throw std::invalid_argument("");
    return {re, im};
  } catch (const std::logic_error&) {
    throw UsageError("bad complex number '" + text + "' (expected re or re,im)");
  }
}

std::string product_text(const stz::FormalProduct& p) { return p.to_string(); }

void print_verdict(std::ostream& os, const char* name, const stz::Verdict& v) {
  fmt::print(os, "{}.lhs={}\n", name, product_text(v.lhs_canonical));
  fmt::print(os, "{}.rhs={}\n", name, product_text(v.rhs_canonical));
  fmt::print(os, "{}.quotient={}\n", name, product_text(v.residual));
  fmt::print(os, "{}.holds={}\n", name, v.holds);
  if (v.coefficient_condition)
    fmt::print(os, "{}.coefficient_condition={}\n", name, *v.coefficient_condition);
  if (v.consistent) fmt::print(os, "{}.consistent={}\n", name, *v.consistent);
}

// ---------------------------------------------------------------------------

int motive_analyze(const Globals& g, const std::string& poly) {
  const auto f = stz::LaurentPoly::parse(poly);
  const auto cls = stz::detect_automorphy(f);
  std::ostringstream os;
  fmt::print(os, "f={}\n", f.to_string());
  fmt::print(os, "kind={}\n", stz::to_string(cls.kind));
  if (cls.sign) fmt::print(os, "C={}\n", *cls.sign);
  if (cls.weight) fmt::print(os, "D={}\n", *cls.weight);
  const auto f1 = stz::eval_at_one(f);
  fmt::print(os, "f(1)={}\n", f1.str());
  if (cls.kind == stz::AutomorphyKind::Odd) {
    fmt::print(os, "zeta_fe=zeta_M(f)({}-s) = zeta_M(f)(s)\n", *cls.weight);
  } else if (cls.kind == stz::AutomorphyKind::Even) {
    fmt::print(os, "zeta_fe=zeta_M(f)({}-s) = zeta_M(f)(s)^-1 * (2 sin pi s)^((4-4g)*{})\n",
               *cls.weight, f1.str());
  }
  if (cls.weight)
    fmt::print(os, "Z_fe=Z_M(f)({}-s) = Z_M(f)(s)^{} * S_M(f)(s)^{}\n", *cls.weight + 1,
               *cls.sign, *cls.sign);
  emit(g, os.str());
  return kOk;
}

int fe_verify(const Globals& g, const std::string& poly, std::optional<long long> d,
              const std::string& kind) {
  const auto f = stz::LaurentPoly::parse(poly);
  const auto cls = stz::detect_automorphy(f);
  std::ostringstream os;
  fmt::print(os, "f={}\n", f.to_string());
  fmt::print(os, "kind={}\n", stz::to_string(cls.kind));
  if (cls.sign) fmt::print(os, "C={}\n", *cls.sign);
  if (cls.weight) fmt::print(os, "D={}\n", *cls.weight);

  bool holds = false;
  if (kind == "Z") {
    if (d && cls.weight && *d != *cls.weight)
      throw UsageError(fmt::format("--d {} differs from the forced weight D = {}", *d, *cls.weight));
    const auto v = stz::verify_Z_fe(f);
    print_verdict(os, "Z_fe", v);
    fmt::print(os, "S_factor={}\n", stz::s_motive_factor(f).to_string());
    holds = v.holds;
  } else if (d) {
    const auto v2 = stz::verify_theorem2(f, *d);
    const auto v3 = stz::verify_theorem3(f, *d);
    print_verdict(os, "odd", v2);
    print_verdict(os, "even", v3);
    holds = v2.holds || v3.holds;
  } else {
    switch (cls.kind) {
      case stz::AutomorphyKind::Odd: {
        const auto v = stz::verify_theorem2(f, *cls.weight);
        print_verdict(os, "odd", v);
        holds = v.holds;
        break;
      }
      case stz::AutomorphyKind::Even: {
        const auto v = stz::verify_theorem3(f, *cls.weight);
        print_verdict(os, "even", v);
        holds = v.holds;
        break;
      }
      case stz::AutomorphyKind::Zero:
        throw stz::DomainError("the zero polynomial has no weight; pass --d");
      case stz::AutomorphyKind::None:
        fmt::print(os, "no absolute automorphy: no weight D gives a functional equation\n");
        break;
    }
  }
  fmt::print(os, "verdict={}\n", holds ? "HOLDS" : "FAILS");
  emit(g, os.str());
  return holds ? kOk : kFailed;
}

int fe_derive_base(const Globals& g) {
  const auto v = stz::derive_base_zeta_fe();
  std::ostringstream os;
  fmt::print(os, "statement=zeta_M(-s) * zeta_M(s) = (2 sin pi s)^(4-4g)\n");
  print_verdict(os, "base", v);
  fmt::print(os, "verdict={}\n", v.holds ? "HOLDS" : "FAILS");
  emit(g, os.str());
  return v.holds ? kOk : kFailed;
}

int special_eval(const Globals& g, const std::string& fn, double s, int r, const std::string& w) {
  const auto ev = g.evaluator();
  const stz::SurfaceParams params(g.genus);
  std::ostringstream os;
  fmt::print(os, "fn={}\ns={}\n", fn, num(s));
  if (fn == "zr") {
    const auto wc = parse_complex(w);
    const auto v = ev.multiple_hurwitz_zeta(r, wc, s);
    fmt::print(os, "r={}\nw={},{}\nvalue={},{}\nabs_err={}\n", r, num(wc.real()), num(wc.imag()),
               num(v.value.real()), num(v.value.imag()), num(v.abs_err));
    emit(g, os.str());
    return kOk;
  }
  stz::RealValue v;
  if (fn == "gamma2")
    v = ev.gamma_r(2, s);
  else if (fn == "s2")
    v = ev.sine_r(2, s);
  else if (fn == "gammaM")
    v = ev.gamma_M(s, params);
  else if (fn == "sM")
    v = ev.s_M(s, params);
  else if (fn == "fe-factor")
    v = ev.selberg_fe_factor(s, params);
  else
    throw UsageError("unknown function " + fn);
  if (fn == "gammaM" || fn == "sM" || fn == "fe-factor") fmt::print(os, "genus={}\n", g.genus);
  fmt::print(os, "value={}\nabs_err={}\n", num(v.value), num(v.abs_err));
  emit(g, os.str());
  return kOk;
}

int special_check(const Globals& g, const std::string& identity) {
  const auto ev = g.evaluator();
  stz::IdentityReport rep;
  if (identity == "ode")
    rep = stz::check_s2_ode(ev);
  else if (identity == "ladder")
    rep = stz::check_s2_ladder(ev);
  else if (identity == "fe-integral")
    rep = stz::check_fe_integral(ev, stz::SurfaceParams(g.genus));
  else if (identity == "reduction")
    rep = stz::check_reduction(ev);
  else
    throw UsageError("unknown identity " + identity);
  std::ostringstream os;
  os << "label,s,lhs,rhs,error,tolerance,pass\n";
  for (const auto& r : rep.rows)
    fmt::print(os, "{},{},{},{},{},{},{}\n", r.label, num(r.s), num(r.lhs), num(r.rhs),
               num(r.error), num(r.tolerance), r.pass ? "pass" : "FAIL");
  emit(g, os.str());
  fmt::print(std::cerr, "{}: {}\n", rep.name, rep.pass() ? "PASS" : "FAIL");
  return rep.pass() ? kOk : kFailed;
}

int spectrum_bolza(const Globals& g, int max_word_len) {
  const auto group = stz::bolza_group();
  const auto cat = stz::enumerate_geodesics(group, {max_word_len, g.threads});
  auto sp = stz::cluster_spectrum(cat, group.genus(),
                                  fmt::format("bolza:max-word-len={}", max_word_len));
  sp.validate();
  if (g.out.empty())
    std::cout << stz::format_spectrum(sp);
  else
    stz::save_spectrum(sp, g.out);
  fmt::print(std::cerr,
             "classes={} entries={} horizon={} systole={} candidates={} merged={} "
             "non_primitive={}\n",
             sp.total_count(), sp.entries.size(), num(sp.horizon),
             sp.entries.empty() ? std::string("none") : num(sp.entries.front().length),
             cat.candidate_words, cat.merged_words, cat.non_primitive);
  return kOk;
}

int zeta_eval(const Globals& g, const std::string& path, double s, const std::string& motive,
              const std::string& fn) {
  const auto sp = stz::load_spectrum(path);
  stz::RealValue v;
  if (motive.empty())
    v = fn == "Z" ? stz::selberg_Z(s, sp) : stz::euler_zeta(s, sp);
  else {
    const auto f = stz::LaurentPoly::parse(motive);
    v = fn == "Z" ? stz::Z_motive_numeric(f, s, sp) : stz::zeta_motive_numeric(f, s, sp);
  }
  std::ostringstream os;
  fmt::print(os, "fn={}\ns={}\n", fn, num(s));
  if (!motive.empty()) fmt::print(os, "motive={}\n", stz::LaurentPoly::parse(motive).to_string());
  fmt::print(os, "value={}\nabs_err={}\n", num(v.value), num(v.abs_err));
  fmt::print(os, "horizon={}\nentries={}\nclasses={}\n", num(sp.horizon), sp.entries.size(),
             sp.total_count());
  emit(g, os.str());
  return kOk;
}

int pgt(const Globals& g, const std::string& path, double xmax, int points) {
  const auto sp = stz::load_spectrum(path);
  if (!(xmax > std::exp(1.0))) throw stz::DomainError("--xmax must exceed e");
  if (points < 1) throw stz::DomainError("--points must be >= 1");
  std::vector<double> xs;
  const double span = std::log(xmax) - 1.0;
  for (int i = 1; i <= points; ++i) xs.push_back(std::exp(1.0 + span * i / points));
  xs.back() = xmax;
  const auto table = stz::pgt_table(sp, xs);
  std::ostringstream os;
  os << "x,count,x_over_logx,ratio\n";
  for (const auto& r : table.rows)
    fmt::print(os, "{},{},{},{}\n", num(r.x), r.count, num(r.x_over_logx), num(r.ratio));
  emit(g, os.str());
  for (const auto& w : table.warnings) fmt::print(std::cerr, "warning: {}\n", w);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selberg zeta functions twisted by Tate motives"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Globals g;
  app.add_option("--out", g.out, "output path (stdout when omitted)");
  app.add_option("--threads", g.threads, "worker threads for spectrum enumeration")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--em-cutoff", g.em_cutoff, "Euler-Maclaurin direct terms")
      ->check(CLI::Range(8, 100000));
  app.add_option("--bernoulli-terms", g.bernoulli_terms, "Euler-Maclaurin Bernoulli terms")
      ->check(CLI::Range(4, 60));
  app.add_option("--tolerance", g.tolerance, "target relative tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--genus", g.genus, "surface genus")->check(CLI::Range(2, 1000000));

  std::function<int()> run;

  auto* motive = app.add_subcommand("motive", "Laurent polynomial motives");
  motive->require_subcommand(1);
  auto* analyze = motive->add_subcommand("analyze", "detect absolute automorphy");
  std::string poly;
  analyze->add_option("--poly", poly, "k=a,k=a,...")->required();
  analyze->callback([&] { run = [&] { return motive_analyze(g, poly); }; });

  auto* fe = app.add_subcommand("fe", "functional equations");
  fe->require_subcommand(1);
  auto* verify = fe->add_subcommand("verify", "verify a twisted functional equation");
  std::optional<long long> weight;
  std::string kind = "zeta";
  verify->add_option("--poly", poly, "k=a,k=a,...")->required();
  verify->add_option("--d", weight, "weight D (both theorems are checked)");
  verify->add_option("--kind", kind)->check(CLI::IsMember({"zeta", "Z"}));
  verify->callback([&] { run = [&] { return fe_verify(g, poly, weight, kind); }; });
  auto* derive = fe->add_subcommand("derive-base", "derive zeta_M(-s) zeta_M(s)");
  derive->callback([&] { run = [&] { return fe_derive_base(g); }; });

  auto* special = app.add_subcommand("special", "multiple gamma and sine functions");
  special->require_subcommand(1);
  auto* eval = special->add_subcommand("eval", "evaluate one function");
  std::string fn;
  double s = 0.0;
  int r = 2;
  std::string w = "2";
  eval->add_option("--fn", fn)
      ->required()
      ->check(CLI::IsMember({"gamma2", "s2", "zr", "gammaM", "sM", "fe-factor"}));
  eval->add_option("--s", s)->required();
  eval->add_option("--r", r, "order for zr")->check(CLI::Range(1, 4));
  eval->add_option("--w", w, "complex w for zr as re or re,im");
  eval->callback([&] { run = [&] { return special_eval(g, fn, s, r, w); }; });
  auto* check = special->add_subcommand("check", "run an identity over its grid");
  std::string identity;
  check->add_option("--identity", identity)
      ->required()
      ->check(CLI::IsMember({"ode", "ladder", "fe-integral", "reduction"}));
  check->callback([&] { run = [&] { return special_check(g, identity); }; });

  auto* spectrum = app.add_subcommand("spectrum", "length spectra");
  spectrum->require_subcommand(1);
  auto* bolza = spectrum->add_subcommand("bolza", "enumerate the Bolza surface");
  int max_word_len = 6;
  bolza->add_option("--max-word-len", max_word_len)->check(CLI::Range(1, stz::kMaxWordLen));
  bolza->callback([&] { run = [&] { return spectrum_bolza(g, max_word_len); }; });

  auto* zeta = app.add_subcommand("zeta", "Euler products");
  zeta->require_subcommand(1);
  auto* zeval = zeta->add_subcommand("eval", "evaluate Z_M, zeta_M or a motive twist");
  std::string spectrum_path, motive_spec;
  std::string zfn = "zeta";
  zeval->add_option("--spectrum", spectrum_path)->required();
  zeval->add_option("--s", s)->required();
  zeval->add_option("--motive", motive_spec, "k=a,k=a,...");
  zeval->add_option("--fn", zfn)->check(CLI::IsMember({"Z", "zeta"}));
  zeval->callback([&] { run = [&] { return zeta_eval(g, spectrum_path, s, motive_spec, zfn); }; });

  auto* pgt_cmd = app.add_subcommand("pgt", "prime geodesic counting table (CSV)");
  double xmax = 0.0;
  int points = 20;
  pgt_cmd->add_option("--spectrum", spectrum_path)->required();
  pgt_cmd->add_option("--xmax", xmax)->required();
  pgt_cmd->add_option("--points", points);
  pgt_cmd->callback([&] { run = [&] { return pgt(g, spectrum_path, xmax, points); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
  }
  return kUsage;
}
