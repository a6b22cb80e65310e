#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infodist {

/// Base of every domain error raised by the library.
///
/// Each error carries a stable kind name (e.g. "MalformedCode") and the labels
/// of the inputs that caused it, so callers can report the offending items
/// without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message,
        std::vector<std::string> labels = {})
      : std::runtime_error(message),
        kind_(std::move(kind)),
        labels_(std::move(labels)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::string kind_;
  std::vector<std::string> labels_;
};

#define INFODIST_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message,                             \
                  std::vector<std::string> labels = {})                   \
        : Error(#Name, message, std::move(labels)) {}                     \
  }

// foundations
INFODIST_DEFINE_ERROR(MalformedCode);
INFODIST_DEFINE_ERROR(LengthMismatch);
INFODIST_DEFINE_ERROR(DomainError);

// compressors
INFODIST_DEFINE_ERROR(CodecFailure);
INFODIST_DEFINE_ERROR(MalformedStream);
INFODIST_DEFINE_ERROR(UnknownCompressor);
INFODIST_DEFINE_ERROR(CorpusTooSmall);

// distances
INFODIST_DEFINE_ERROR(DegenerateInput);
INFODIST_DEFINE_ERROR(DegenerateDenominator);
INFODIST_DEFINE_ERROR(UnknownTerm);
INFODIST_DEFINE_ERROR(ConditionUnsupported);
INFODIST_DEFINE_ERROR(IdentityBoundExceeded);
INFODIST_DEFINE_ERROR(DuplicateLabel);
INFODIST_DEFINE_ERROR(TooFewItems);
INFODIST_DEFINE_ERROR(MalformedMatrix);

// frequency
INFODIST_DEFINE_ERROR(ProviderFailure);
INFODIST_DEFINE_ERROR(ReplayMiss);
INFODIST_DEFINE_ERROR(MissingEntry);
INFODIST_DEFINE_ERROR(ArityUnsupported);
INFODIST_DEFINE_ERROR(DuplicateDocId);
INFODIST_DEFINE_ERROR(MalformedSnapshot);

// quartet
INFODIST_DEFINE_ERROR(InfiniteDistance);
INFODIST_DEFINE_ERROR(LabelMismatch);
INFODIST_DEFINE_ERROR(TooFewLeaves);
INFODIST_DEFINE_ERROR(TooManyLeaves);

// applications
INFODIST_DEFINE_ERROR(InfiniteEntry);
INFODIST_DEFINE_ERROR(EmptyAnchors);
INFODIST_DEFINE_ERROR(DegenerateLabels);
INFODIST_DEFINE_ERROR(FingerprintMismatch);
INFODIST_DEFINE_ERROR(MalformedModel);
INFODIST_DEFINE_ERROR(VocabularyTooLarge);
INFODIST_DEFINE_ERROR(InvalidVocabulary);
INFODIST_DEFINE_ERROR(ZeroVariance);

#undef INFODIST_DEFINE_ERROR

}  // namespace infodist
