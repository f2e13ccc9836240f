#include "stz/spectrum.hpp"

#include "stz/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

namespace stz {
namespace {

constexpr double kHyperbolicMargin = 1e-9;
constexpr double kLengthCluster = 1e-9;
constexpr double kMatrixTol = 1e-7;
constexpr double kAxisEps = 1e-9;
constexpr std::size_t kMaxClosure = 4096;
constexpr std::size_t kMaxLifts = 1 << 14;

// ---------------------------------------------------------------------------
// Combinatorics of cyclic words

Word rotate(const Word& w, int start) {
  Word out;
  for (int i = 0; i < w.size; ++i) out.push_back(w[(start + i) % w.size]);
  return out;
}

Word cyclic_subword(const Word& w, int start, int len) {
  Word out;
  for (int i = 0; i < len; ++i) out.push_back(w[(start + i) % w.size]);
  return out;
}

Word min_rotation(const Word& w) {
  Word best = w;
  for (int i = 1; i < w.size; ++i) {
    const Word r = rotate(w, i);
    if (r.key() < best.key()) best = r;
  }
  return best;
}

bool is_min_rotation(const Word& w) {
  const auto k = w.key();
  for (int i = 1; i < w.size; ++i)
    if (rotate(w, i).key() < k) return false;
  return true;
}

bool is_periodic(const Word& w) {
  for (int d = 1; d < w.size; ++d) {
    if (w.size % d != 0) continue;
    bool same = true;
    for (int i = 0; i < w.size && same; ++i) same = w[i] == w[(i + d) % w.size];
    if (same) return true;
  }
  return false;
}

Word inverse_word(const FuchsianGroup& g, const Word& w) {
  Word out;
  for (int i = w.size - 1; i >= 0; --i) out.push_back(g.inverse_letter(w[i]));
  return out;
}

bool cyclically_reduced(const FuchsianGroup& g, const Word& w) {
  if (w.size < 2) return true;
  for (int i = 0; i < w.size; ++i)
    if (g.inverse_letter(w[i]) == w[(i + 1) % w.size]) return false;
  return true;
}

// Pieces of the relators used by Dehn's algorithm: any cyclic subword longer
// than half a relator can be shortened, and a subword of exactly half can be
// swapped for the inverse of the other half.
class RelatorIndex {
public:
  explicit RelatorIndex(const FuchsianGroup& g) : group_(g) {
    for (const Word& r : g.relators()) {
      const int len = r.size;
      for (const Word& base : {r, inverse_word(g, r)}) {
        for (int i = 0; i < len; ++i) {
          const Word rot = rotate(base, i);
          long_pieces_.push_back(cyclic_subword(rot, 0, len / 2 + 1).key());
          long_lengths_.push_back(len / 2 + 1);
          if (len % 2 == 0) {
            const Word half = cyclic_subword(rot, 0, len / 2);
            const Word rest = cyclic_subword(rot, len / 2, len / 2);
            swaps_.push_back({half.key(), inverse_word(g, rest)});
            half_lengths_.push_back(len / 2);
          }
        }
      }
    }
    std::sort(long_pieces_.begin(), long_pieces_.end());
    std::sort(swaps_.begin(), swaps_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    dedupe(long_lengths_);
    dedupe(half_lengths_);
  }

  bool has_long_piece(const Word& w) const {
    for (int len : long_lengths_) {
      if (w.size < len) continue;
      for (int i = 0; i < w.size; ++i)
        if (std::binary_search(long_pieces_.begin(), long_pieces_.end(),
                               cyclic_subword(w, i, len).key()))
          return true;
    }
    return false;
  }

  struct Closure {
    bool shortenable = false;
    bool periodic = false;
    Word min;
  };

  // Closure of a cyclic word under half-relator swaps.
  Closure closure(const Word& w) const {
    Closure out;
    std::vector<Word> seen{min_rotation(w)};
    for (std::size_t idx = 0; idx < seen.size(); ++idx) {
      const Word u = seen[idx];
      if (!cyclically_reduced(group_, u) || has_long_piece(u)) {
        out.shortenable = true;
        return out;
      }
      out.periodic = out.periodic || is_periodic(u);
      for (int len : half_lengths_) {
        if (u.size < len) continue;
        for (int i = 0; i < u.size; ++i) {
          const auto key = cyclic_subword(u, i, len).key();
          auto it = std::lower_bound(swaps_.begin(), swaps_.end(), key,
                                     [](const auto& s, std::uint64_t k) { return s.first < k; });
          for (; it != swaps_.end() && it->first == key; ++it) {
            Word next = it->second;
            for (int j = len; j < u.size; ++j) next.push_back(u[(i + j) % u.size]);
            next = min_rotation(next);
            if (std::none_of(seen.begin(), seen.end(), [&](const Word& s) { return s == next; }))
              seen.push_back(next);
          }
        }
      }
      if (seen.size() > kMaxClosure)
        throw std::runtime_error("half-relator closure exceeded its size limit");
    }
    out.min = *std::min_element(seen.begin(), seen.end(),
                                [](const Word& x, const Word& y) { return x.key() < y.key(); });
    return out;
  }

private:
  static void dedupe(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  const FuchsianGroup& group_;
  std::vector<std::uint64_t> long_pieces_;
  std::vector<int> long_lengths_;
  std::vector<std::pair<std::uint64_t, Word>> swaps_;
  std::vector<int> half_lengths_;
};

// ---------------------------------------------------------------------------
// Geometry in the Klein model of the disk, centred at the image of i.

// g^{-1} m g without renormalization: conjugation preserves the determinant,
// and rescaling by a noisy ad - bc accumulates along long conjugation chains.
Mat2 conjugate(const Mat2& m, const Mat2& g) {
  const Mat2 gi = g.inverse();
  const Mat2 t{gi.a * m.a + gi.b * m.c, gi.a * m.b + gi.b * m.d, gi.c * m.a + gi.d * m.c,
               gi.c * m.b + gi.d * m.d};
  return {t.a * g.a + t.b * g.c, t.a * g.b + t.b * g.d, t.c * g.a + t.d * g.c,
          t.c * g.b + t.d * g.d};
}

struct Point {
  double x, y;
};

double dot(Point p, Point q) { return p.x * q.x + p.y * q.y; }

class DirichletDomain {
public:
  explicit DirichletDomain(const FuchsianGroup& g) : group_(g) {
    for (int l = 0; l < g.letter_count(); ++l) {
      const Mat2& m = g.letter(static_cast<std::uint8_t>(l));
      // Disk image of i under m is beta / delta; its modulus is also the
      // Klein distance of the bisector of 0 and that image.
      const std::complex<double> beta{(m.a - m.d) / 2, -(m.b + m.c) / 2};
      const std::complex<double> delta{(m.a + m.d) / 2, -(m.b - m.c) / 2};
      const std::complex<double> z = beta / delta;
      const double r = std::abs(z);
      sides_.push_back({{z.real() / r, z.imag() / r}, r});
    }
  }

  bool axis_meets(const Mat2& m, double eps) const {
    const auto [p, q] = axis(m);
    const Point d{q.x - p.x, q.y - p.y};
    double lo = 0.0, hi = 1.0;
    for (const Side& s : sides_) {
      const double num = s.offset + eps - dot(s.normal, p);
      const double den = dot(s.normal, d);
      if (std::abs(den) < 1e-300) {
        if (num < 0) return false;
        continue;
      }
      const double t = num / den;
      if (den > 0)
        hi = std::min(hi, t);
      else
        lo = std::max(lo, t);
      if (lo > hi) return false;
    }
    return lo <= hi;
  }

  // Conjugate of m whose axis meets the closed domain.
  Mat2 reduce(Mat2 m) const {
    for (int iter = 0; iter < 100000; ++iter) {
      if (axis_meets(m, kAxisEps)) return m.sign_normalized();
      const auto [p, q] = axis(m);
      const Point d{q.x - p.x, q.y - p.y};
      const double t = -dot(p, d) / dot(d, d);
      const Point foot{p.x + t * d.x, p.y + t * d.y};
      int best = 0;
      double worst = -1e300;
      for (int k = 0; k < static_cast<int>(sides_.size()); ++k) {
        const double v = dot(sides_[k].normal, foot) - sides_[k].offset;
        if (v > worst) {
          worst = v;
          best = k;
        }
      }
      const Mat2& g = group_.letter(static_cast<std::uint8_t>(best));
      m = conjugate(m, g);
    }
    throw std::runtime_error("axis reduction did not terminate");
  }

  // Every conjugate of a reduced element whose axis meets the closed domain.
  std::vector<Mat2> lifts(const Mat2& reduced) const {
    std::vector<Mat2> seen{reduced};
    for (std::size_t idx = 0; idx < seen.size(); ++idx) {
      const Mat2 c = seen[idx];
      for (int l = 0; l < group_.letter_count(); ++l) {
        const Mat2& g = group_.letter(static_cast<std::uint8_t>(l));
        const Mat2 n = conjugate(c, g).sign_normalized();
        if (!axis_meets(n, kAxisEps)) continue;
        if (std::none_of(seen.begin(), seen.end(),
                         [&](const Mat2& s) { return same_projective(s, n, kMatrixTol); }))
          seen.push_back(n);
      }
      if (seen.size() > kMaxLifts)
        throw std::runtime_error(fmt::format("too many axis lifts (trace {:.17g}, max entry {:.3g})",
                                             reduced.trace(), seen.back().max_abs()));
    }
    return seen;
  }

private:
  struct Side {
    Point normal;
    double offset;
  };

  // Repelling and attracting fixed points on the unit circle.
  static std::pair<Point, Point> axis(const Mat2& m) {
    const std::complex<double> gamma{(m.a - m.d) / 2, (m.b + m.c) / 2};
    const std::complex<double> delta{(m.a + m.d) / 2, -(m.b - m.c) / 2};
    const double tr = m.trace();
    const double root = std::sqrt(std::max(0.0, tr * tr - 4.0));
    const std::complex<double> ib{0.0, m.b - m.c};
    const std::complex<double> z1 = (ib + root) / (2.0 * gamma);
    const std::complex<double> z2 = (ib - root) / (2.0 * gamma);
    const bool z1_attracting = std::abs(gamma * z1 + delta) > std::abs(gamma * z2 + delta);
    const std::complex<double> att = z1_attracting ? z1 : z2;
    const std::complex<double> rep = z1_attracting ? z2 : z1;
    return {{rep.real(), rep.imag()}, {att.real(), att.imag()}};
  }

  const FuchsianGroup& group_;
  std::vector<Side> sides_;
};

// ---------------------------------------------------------------------------
// Enumeration

struct Candidate {
  Word word;
  double length;
  double trace_abs;
  Mat2 matrix;
};

struct TaskResult {
  std::vector<Candidate> candidates;
  std::uint64_t non_primitive = 0;
};

class WordSearch {
public:
  WordSearch(const FuchsianGroup& g, const RelatorIndex& rel, int max_len)
      : group_(g), relators_(rel), max_len_(max_len) {}

  void run(const Word& prefix, bool descend, TaskResult& out) const {
    Word w = prefix;
    visit(w, descend, out);
  }

private:
  void visit(Word& w, bool descend, TaskResult& out) const {
    consider(w, out);
    if (!descend || w.size == max_len_) return;
    for (int l = w[0]; l < group_.letter_count(); ++l) {
      const auto letter = static_cast<std::uint8_t>(l);
      if (group_.inverse_letter(w[w.size - 1]) == letter) continue;
      w.push_back(letter);
      visit(w, true, out);
      --w.size;
    }
  }

  void consider(const Word& w, TaskResult& out) const {
    if (!cyclically_reduced(group_, w) || !is_min_rotation(w)) return;
    if (relators_.has_long_piece(w)) return;
    const auto cl = relators_.closure(w);
    if (cl.shortenable || !(cl.min == w)) return;
    if (cl.periodic) {
      ++out.non_primitive;
      return;
    }
    const Mat2 m = group_.evaluate(w);
    const double tr = std::abs(m.trace());
    if (tr <= 2.0 + kHyperbolicMargin)
      throw std::runtime_error(fmt::format(
          "word {} has |trace| {:.17g} <= 2: group is not cocompact torsion-free or the relators "
          "are incomplete",
          group_.spell(w), tr));
    out.candidates.push_back({w, translation_length(tr), tr, m});
  }

  const FuchsianGroup& group_;
  const RelatorIndex& relators_;
  int max_len_;
};

}  // namespace

GeodesicCatalogue enumerate_geodesics(const FuchsianGroup& group,
                                      const EnumerationOptions& options) {
  const int max_len = options.max_word_len;
  if (max_len < 1 || max_len > kMaxWordLen)
    throw DomainError(fmt::format("max word length must be in [1, {}], got {}", kMaxWordLen, max_len));

  const RelatorIndex relators(group);
  const WordSearch search(group, relators, max_len);

  // Tasks: single letters (no descent), then two-letter necklace prefixes.
  struct Task {
    Word prefix;
    bool descend;
  };
  std::vector<Task> tasks;
  const int letters = group.letter_count();
  for (int a = 0; a < letters; ++a) {
    Word w;
    w.push_back(static_cast<std::uint8_t>(a));
    tasks.push_back({w, false});
  }
  if (max_len >= 2) {
    for (int a = 0; a < letters; ++a)
      for (int b = a; b < letters; ++b) {
        if (group.inverse_letter(static_cast<std::uint8_t>(a)) == b) continue;
        Word w;
        w.push_back(static_cast<std::uint8_t>(a));
        w.push_back(static_cast<std::uint8_t>(b));
        tasks.push_back({w, true});
      }
  }

  std::vector<TaskResult> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        search.run(tasks[i].prefix, tasks[i].descend, results[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);

  GeodesicCatalogue cat;
  std::vector<Candidate> cands;
  for (auto& r : results) {
    cat.non_primitive += r.non_primitive;
    cands.insert(cands.end(), r.candidates.begin(), r.candidates.end());
  }
  cat.candidate_words = cands.size();
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.word.key() < y.word.key();
  });
  if (cands.empty()) return cat;

  double horizon = 1e300;
  for (const auto& c : cands)
    if (c.word.size == max_len) horizon = std::min(horizon, c.length);

  const DirichletDomain domain(group);
  const double max_length = cands.back().length;
  const double min_length = cands.front().length;

  struct Rep {
    double length;
    std::vector<Mat2> lifts;
  };
  std::vector<Rep> short_reps;  // lengths <= max_length / 2, for the power test

  std::size_t i = 0;
  while (i < cands.size()) {
    std::size_t j = i + 1;
    while (j < cands.size() && cands[j].length - cands[j - 1].length <= kLengthCluster) ++j;
    std::vector<const Candidate*> cluster;
    for (std::size_t k = i; k < j; ++k) cluster.push_back(&cands[k]);
    std::stable_sort(cluster.begin(), cluster.end(), [](const Candidate* x, const Candidate* y) {
      return x->word.key() < y->word.key();
    });

    std::vector<Rep> reps;
    std::vector<const Candidate*> rep_cands;
    for (const Candidate* c : cluster) {
      const Mat2 reduced = domain.reduce(c->matrix);
      bool known = false;
      for (const Rep& r : reps) {
        known = std::any_of(r.lifts.begin(), r.lifts.end(),
                            [&](const Mat2& s) { return same_projective(s, reduced, kMatrixTol); });
        if (known) break;
      }
      if (known) {
        ++cat.merged_words;
        continue;
      }
      try {
        reps.push_back({c->length, domain.lifts(reduced)});
      } catch (const std::runtime_error& e) {
        throw std::runtime_error(fmt::format("{} for word {}", e.what(), group.spell(c->word)));
      }
      rep_cands.push_back(c);
    }

    for (std::size_t r = 0; r < reps.size(); ++r) {
      const Candidate& c = *rep_cands[r];
      const Mat2& reduced = reps[r].lifts.front();
      bool power = false;
      for (int k = 2; !power && c.length / k >= min_length - 1e-6; ++k) {
        const double target = c.length / k;
        auto lo = std::lower_bound(short_reps.begin(), short_reps.end(), target - 1e-8 * k,
                                   [](const Rep& x, double v) { return x.length < v; });
        for (; !power && lo != short_reps.end() && lo->length <= target + 1e-8 * k; ++lo)
          power = std::any_of(lo->lifts.begin(), lo->lifts.end(), [&](const Mat2& d) {
            return same_projective(stz::power(d, k), reduced, kMatrixTol);
          });
      }
      if (power) {
        ++cat.non_primitive;
        continue;
      }
      cat.geodesics.push_back({c.length, std::exp(c.length), group.spell(c.word), c.trace_abs,
                               c.word.size});
    }
    for (auto& r : reps)
      if (r.length <= 0.5 * max_length + 1e-6) short_reps.push_back(std::move(r));
    i = j;
  }

  const double max_primitive = cat.geodesics.empty() ? 0.0 : cat.geodesics.back().length;
  cat.horizon = std::min(horizon == 1e300 ? max_primitive : horizon, max_primitive);
  return cat;
}

LengthSpectrum cluster_spectrum(const GeodesicCatalogue& catalogue, int genus, std::string source) {
  LengthSpectrum sp;
  sp.genus = genus;
  sp.source = std::move(source);
  sp.horizon = catalogue.horizon;
  sp.classification =
      "cyclic-words+dehn-reduction+half-relator-swaps+dirichlet-axis-test;length-cluster=1e-9";
  for (const auto& g : catalogue.geodesics) {
    if (!sp.entries.empty() && g.length - sp.entries.back().length <= kLengthCluster)
      ++sp.entries.back().multiplicity;
    else
      sp.entries.push_back({g.length, 1});
  }
  return sp;
}

LengthSpectrum enumerate_spectrum(const FuchsianGroup& group, const EnumerationOptions& options) {
  const GeodesicCatalogue cat = enumerate_geodesics(group, options);
  LengthSpectrum sp = cluster_spectrum(
      cat, group.genus(), fmt::format("{}:max-word-len={}", group.label(), options.max_word_len));
  sp.validate();
  return sp;
}

std::uint64_t LengthSpectrum::total_count() const {
  std::uint64_t n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

double LengthSpectrum::max_length() const { return entries.empty() ? 0.0 : entries.back().length; }

void LengthSpectrum::validate() const {
  if (genus < 2) throw DomainError(fmt::format("spectrum genus must be >= 2, got {}", genus));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].length > 0.0))
      throw DomainError(fmt::format("entry {} has non-positive length", i));
    if (entries[i].multiplicity < 1)
      throw DomainError(fmt::format("entry {} has zero multiplicity", i));
    if (i > 0 && !(entries[i].length - entries[i - 1].length > kLengthCluster))
      throw DomainError(fmt::format("entry {} is not strictly above its predecessor", i));
  }
  if (!entries.empty() && !(horizon > 0.0 && horizon <= max_length()))
    throw DomainError(fmt::format("horizon {} outside (0, {}]", horizon, max_length()));
}

}  // namespace stz
