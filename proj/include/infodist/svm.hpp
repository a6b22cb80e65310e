#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace infodist {

using FeatureVector = std::vector<double>;

/// Soft-margin binary classifier with kernel exp(-gamma·|x−z|²).
struct SvmModel {
  double gamma = 1.0;
  double cost = 1.0;
  std::vector<FeatureVector> support;
  std::vector<double> coef;  // alpha_i · y_i
  double rho = 0.0;
  /// Set when training data admit no split (one class, or identical vectors);
  /// the model then always answers this label.
  std::optional<int> constant_label;

  double decision(const FeatureVector& x) const;
  int predict(const FeatureVector& x) const;
};

/// SMO with second-order working-set selection. Labels are ±1.
SvmModel train_svm(const std::vector<FeatureVector>& x, const std::vector<int>& y, double gamma,
                   double cost);

/// Fold number per sample; each class is shuffled and dealt round-robin.
std::vector<std::size_t> stratified_folds(const std::vector<int>& y, std::size_t folds,
                                          std::uint64_t seed);

struct GridChoice {
  double gamma = 1.0;
  double cost = 1.0;
  double cv_accuracy = 0.0;
};

/// gamma in {2^-6..2^4}, C in {2^-2..2^8}; best CV accuracy, ties to smaller C
/// then larger gamma.
GridChoice select_hyperparameters(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                                  std::size_t folds, std::uint64_t seed);

}  // namespace infodist
