#include "stz/errors.hpp"
#include "stz/spectrum.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace stz {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, int line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError(fmt::format("bad {} '{}'", what, text), line);
  return value;
}

}  // namespace

std::string format_spectrum(const LengthSpectrum& sp) {
  std::string out;
  out += fmt::format("# genus={}\n", sp.genus);
  out += fmt::format("# source={}\n", sp.source);
  out += fmt::format("# horizon={:.17g}\n", sp.horizon);
  out += fmt::format("# convention={}\n", sp.convention);
  if (!sp.classification.empty()) out += fmt::format("# classification={}\n", sp.classification);
  for (const auto& e : sp.entries) out += fmt::format("{:.17g} {}\n", e.length, e.multiplicity);
  return out;
}

void save_spectrum(const LengthSpectrum& sp, const std::filesystem::path& path) {
  sp.validate();
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    os << format_spectrum(sp);
    if (!os.flush()) throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

LengthSpectrum parse_spectrum(const std::string& text) {
  LengthSpectrum sp;
  sp.convention.clear();
  bool have_genus = false, have_source = false, have_horizon = false, have_convention = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const std::string_view body = trim(s.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;  // free comment
      if (!sp.entries.empty()) throw FormatError("header after data rows", line);
      const std::string_view key = trim(body.substr(0, eq));
      const std::string_view value = trim(body.substr(eq + 1));
      if (key == "genus") {
        sp.genus = parse_number<int>(value, line, "genus");
        if (sp.genus < 2) throw FormatError("genus must be >= 2", line);
        have_genus = true;
      } else if (key == "source") {
        sp.source = value;
        have_source = true;
      } else if (key == "horizon") {
        sp.horizon = parse_number<double>(value, line, "horizon");
        have_horizon = true;
      } else if (key == "convention") {
        sp.convention = value;
        if (sp.convention != kInverseConvention)
          throw FormatError(fmt::format("unsupported convention '{}'", value), line);
        have_convention = true;
      } else if (key == "classification") {
        sp.classification = value;
      } else {
        throw FormatError(fmt::format("unknown header '{}'", key), line);
      }
      continue;
    }
    if (!have_genus) throw FormatError("missing '# genus=' header before data", line);
    if (!have_source) throw FormatError("missing '# source=' header before data", line);
    if (!have_horizon) throw FormatError("missing '# horizon=' header before data", line);
    if (!have_convention) throw FormatError("missing '# convention=' header before data", line);
    const auto sp_pos = s.find_first_of(" \t");
    if (sp_pos == std::string_view::npos) throw FormatError("expected '<length> <multiplicity>'", line);
    SpectrumEntry e;
    e.length = parse_number<double>(s.substr(0, sp_pos), line, "length");
    e.multiplicity = parse_number<std::uint64_t>(trim(s.substr(sp_pos)), line, "multiplicity");
    if (!(e.length > 0.0)) throw FormatError("length must be positive", line);
    if (e.multiplicity < 1) throw FormatError("multiplicity must be >= 1", line);
    if (!sp.entries.empty() && !(e.length - sp.entries.back().length > 1e-9))
      throw FormatError("lengths must increase by more than 1e-9", line);
    sp.entries.push_back(e);
  }
  if (!have_genus) throw FormatError("missing '# genus=' header", line);
  if (!have_source) throw FormatError("missing '# source=' header", line);
  if (!have_horizon) throw FormatError("missing '# horizon=' header", line);
  if (!have_convention) throw FormatError("missing '# convention=' header", line);
  try {
    sp.validate();
  } catch (const DomainError& e) {
    throw FormatError(e.what(), line);
  }
  return sp;
}

LengthSpectrum load_spectrum(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_spectrum(ss.str());
}

}  // namespace stz
