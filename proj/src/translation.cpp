#include "infodist/translation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "infodist/error.hpp"

namespace infodist {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) throw ZeroVariance("distance vector is constant");
  return sab / std::sqrt(saa * sbb);
}

TranslationResult match_translation(const VocabularyBasis& basis, const TermDistance& source,
                                    const TermDistance& target) {
  const std::size_t u = basis.unknown_source.size();
  const std::size_t k = basis.known.size();
  if (u != basis.candidate_target.size()) {
    throw InvalidVocabulary(std::to_string(u) + " unknown source words but " +
                            std::to_string(basis.candidate_target.size()) + " candidate targets");
  }
  if (u == 0) throw InvalidVocabulary("no unknown words to match");
  if (k < 2) throw InvalidVocabulary("at least 2 known translation pairs are required");
  if (u > kMaxUnknownWords) {
    throw VocabularyTooLarge(std::to_string(u) + " unknown words; exhaustive matching stops at " +
                             std::to_string(kMaxUnknownWords));
  }

  // Source pattern in fixed order.
  std::vector<double> src;
  for (std::size_t i = 0; i < u; ++i) {
    for (std::size_t j = i + 1; j < u; ++j) {
      src.push_back(source(basis.unknown_source[i], basis.unknown_source[j]));
    }
  }
  for (std::size_t i = 0; i < u; ++i) {
    for (const auto& [s, t] : basis.known) src.push_back(source(basis.unknown_source[i], s));
  }

  // Target distances among candidates and from candidates to known targets.
  std::vector<double> tt(u * u, 0.0), tk(u * k, 0.0);
  for (std::size_t a = 0; a < u; ++a) {
    for (std::size_t b = a + 1; b < u; ++b) {
      tt[a * u + b] = tt[b * u + a] =
          target(basis.candidate_target[a], basis.candidate_target[b]);
    }
    for (std::size_t m = 0; m < k; ++m) {
      tk[a * k + m] = target(basis.candidate_target[a], basis.known[m].second);
    }
  }
  for (double v : src) {
    if (!std::isfinite(v)) throw InfiniteEntry("source distance table holds an infinite entry");
  }
  for (double v : tt) {
    if (!std::isfinite(v)) throw InfiniteEntry("target distance table holds an infinite entry");
  }
  for (double v : tk) {
    if (!std::isfinite(v)) throw InfiniteEntry("target distance table holds an infinite entry");
  }

  std::vector<std::size_t> perm(u);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> tgt(src.size());
  auto fill_target = [&] {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j = i + 1; j < u; ++j) tgt[pos++] = tt[perm[i] * u + perm[j]];
    }
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t m = 0; m < k; ++m) tgt[pos++] = tk[perm[i] * k + m];
    }
  };

  TranslationResult best;
  best.correlation = -std::numeric_limits<double>::infinity();
  do {
    fill_target();
    const double r = pearson(src, tgt);
    ++best.permutations_tried;
    if (r > best.correlation) {
      best.correlation = r;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  best.success = best.correlation > 0.0;
  for (std::size_t i = 0; i < u; ++i) {
    best.pairs.emplace_back(basis.unknown_source[i], basis.candidate_target[best.permutation[i]]);
  }
  return best;
}

}  // namespace infodist
