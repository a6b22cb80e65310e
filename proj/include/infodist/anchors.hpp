#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infodist/distances.hpp"
#include "infodist/svm.hpp"

namespace infodist {

using TermDistance = std::function<double(const std::string&, const std::string&)>;

/// One row per word; row j holds distance(word_j, anchor_i) for every anchor i.
struct AnchorVectorSet {
  std::vector<std::string> words;
  std::vector<std::string> anchors;
  std::vector<FeatureVector> vectors;
  std::vector<int> labels;  // ±1 per word, or empty
};

/// Throws EmptyAnchors, InfiniteEntry (naming word and anchor) and
/// LabelMismatch when labels are given but not one per word.
AnchorVectorSet build_anchor_vectors(const std::vector<std::string>& words,
                                     const std::vector<std::string>& anchors,
                                     const std::vector<int>& labels, const TermDistance& dist);

/// Provider-backed variant using nwd (or another web method).
AnchorVectorSet build_anchor_vectors(const std::vector<std::string>& words,
                                     const std::vector<std::string>& anchors,
                                     const std::vector<int>& labels, const FrequencyProvider& p,
                                     Method method = Method::nwd, double log_base = 2.0);

/// Advisory: more anchors than a tenth of the training words.
std::optional<std::string> dimension_warning(const AnchorVectorSet& avs);

struct TrainedClassifier {
  SvmModel model;
  std::vector<std::string> anchors;
  std::string fingerprint;  // distance method + backend the vectors came from
  std::uint64_t seed = 0;
  double cv_accuracy = 0.0;
  double training_accuracy = 0.0;
};

/// Throws DegenerateLabels unless each class has at least 3 examples.
TrainedClassifier train_classifier(const AnchorVectorSet& avs, const std::string& fingerprint,
                                   std::size_t cv_folds = 5, std::uint64_t seed = 0);

/// Throws FingerprintMismatch if anchors or backend differ from training.
std::vector<int> classify(const TrainedClassifier& c, const AnchorVectorSet& avs,
                          const std::string& fingerprint);

/// Versioned text form ("NWD-SVM v1"); load throws MalformedModel.
std::string save_model(const TrainedClassifier& c);
TrainedClassifier load_model(std::string_view text);

}  // namespace infodist
