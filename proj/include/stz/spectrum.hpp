#pragma once

// Primitive closed geodesics of a compact hyperbolic surface, their length
// spectrum, and the Euler products and counting functions built on it.

#include "stz/fuchsian.hpp"
#include "stz/special_value.hpp"
#include "stz/tate_motive.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace stz {

struct PrimitiveGeodesic {
  double length = 0.0;
  double norm = 0.0;  // exp(length)
  std::string word;
  double trace_abs = 0.0;
  /// Number of letters in the shortest word found for the class.
  int word_length = 0;
};

struct SpectrumEntry {
  double length = 0.0;
  std::uint64_t multiplicity = 0;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

inline constexpr const char* kInverseConvention = "gamma-and-inverse-distinct";

struct LengthSpectrum {
  std::vector<SpectrumEntry> entries;  // ascending, gaps > 1e-9
  int genus = 2;
  std::string source;
  /// Below this length every class reachable by the word search is present.
  double horizon = 0.0;
  std::string convention = kInverseConvention;
  /// How conjugacy classes were identified; free text.
  std::string classification;

  std::uint64_t total_count() const;
  double max_length() const;
  /// Throws DomainError when an invariant is violated.
  void validate() const;

  friend bool operator==(const LengthSpectrum&, const LengthSpectrum&) = default;
};

struct EnumerationOptions {
  int max_word_len = 6;
  unsigned threads = 1;
};

struct GeodesicCatalogue {
  /// Sorted by (length, word length, word).
  std::vector<PrimitiveGeodesic> geodesics;
  double horizon = 0.0;
  /// Cyclically reduced words that survived the combinatorial filters.
  std::uint64_t candidate_words = 0;
  /// Candidates folded into an earlier class by the geometric test.
  std::uint64_t merged_words = 0;
  /// Candidates discarded as proper powers.
  std::uint64_t non_primitive = 0;
};

/// Conjugacy classes of primitive hyperbolic elements with word length up to
/// max_word_len. Words are cyclically reduced, shortened by the relators
/// (Dehn reduction, half-relator swaps) and classes sharing a length are
/// merged when one has a conjugate whose axis crosses the central Dirichlet
/// polygon in the same place as the other's. gamma and gamma^{-1} are
/// distinct classes. The result does not depend on options.threads.
GeodesicCatalogue enumerate_geodesics(const FuchsianGroup& group, const EnumerationOptions& options);

/// Clusters catalogue lengths at 1e-9 into a spectrum.
LengthSpectrum cluster_spectrum(const GeodesicCatalogue& catalogue, int genus, std::string source);

LengthSpectrum enumerate_spectrum(const FuchsianGroup& group, const EnumerationOptions& options);

/// ASCII format: '# genus=', '# source=', '# horizon=', '# convention='
/// headers (plus optional '# classification='), then '<length> <multiplicity>'
/// rows in ascending order. Written atomically.
void save_spectrum(const LengthSpectrum& sp, const std::filesystem::path& path);
std::string format_spectrum(const LengthSpectrum& sp);
/// Throws FormatError with the offending line number.
LengthSpectrum load_spectrum(const std::filesystem::path& path);
LengthSpectrum parse_spectrum(const std::string& text);

// Euler products over a finite spectrum, defined for s > 1 + 1e-3. The finite
// truncation of the spectrum is not part of the error estimate.

/// Z_M(s) = prod_P prod_{n>=0} (1 - N(P)^{-s-n}); inner product stops once
/// N(P)^{-(s+n)} < 1e-17.
RealValue selberg_Z(double s, const LengthSpectrum& sp);
/// zeta_M(s) = prod_P (1 - N(P)^{-s})^{-1}, skipping factors with
/// N(P)^{-s} < 1e-17 exactly as selberg_Z does (counted in abs_err).
RealValue euler_zeta(double s, const LengthSpectrum& sp);
/// zeta_{M(f)}(s) = prod_k zeta_M(s - k)^{a(k)}.
RealValue zeta_motive_numeric(const LaurentPoly& f, double s, const LengthSpectrum& sp);
/// Z_{M(f)}(s) = prod_k Z_M(s - k)^{a(k)}.
RealValue Z_motive_numeric(const LaurentPoly& f, double s, const LengthSpectrum& sp);

/// pi_M(x): number of primitive geodesics with exp(length) <= x.
std::uint64_t geodesic_count(double x, const LengthSpectrum& sp);

struct PgtRow {
  double x = 0.0;
  std::uint64_t count = 0;
  double x_over_logx = 0.0;
  double ratio = 0.0;  // count * log x / x
  bool within_horizon = true;
};

struct PgtTable {
  std::vector<PgtRow> rows;
  std::vector<std::string> warnings;
};

/// Rows for each x; points outside (e, exp(horizon)] are reported with a
/// warning.
PgtTable pgt_table(const LengthSpectrum& sp, const std::vector<double>& xs);

}  // namespace stz
