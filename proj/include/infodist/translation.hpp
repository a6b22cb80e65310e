#pragma once

#include <string>
#include <utility>
#include <vector>

#include "infodist/anchors.hpp"

namespace infodist {

struct VocabularyBasis {
  std::vector<std::pair<std::string, std::string>> known;  // (source, target)
  std::vector<std::string> unknown_source;
  std::vector<std::string> candidate_target;
};

struct TranslationResult {
  bool success = false;
  /// candidate_target index assigned to each unknown source word.
  std::vector<std::size_t> permutation;
  /// (unknown source word, assigned target word) pairs.
  std::vector<std::pair<std::string, std::string>> pairs;
  double correlation = 0.0;
  std::size_t permutations_tried = 0;
};

inline constexpr std::size_t kMaxUnknownWords = 8;

/// Pearson correlation; throws ZeroVariance if either side is constant.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Exhaustive search over assignments of candidate targets to unknown source
/// words, maximizing the correlation between source and target distance
/// patterns (unknown–unknown pairs, then unknown–known pairs). Fails when the
/// best correlation is not positive. Ties keep the lexicographically first
/// permutation.
///
/// Throws InvalidVocabulary, VocabularyTooLarge (more than 8 unknowns),
/// ZeroVariance.
TranslationResult match_translation(const VocabularyBasis& basis, const TermDistance& source,
                                    const TermDistance& target);

}  // namespace infodist
