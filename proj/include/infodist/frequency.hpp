#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace infodist {

/// Sorted, duplicate-free set of 1..3 terms.
using TermSet = std::vector<std::string>;

inline constexpr std::size_t kMaxArity = 3;

/// Sorts and de-duplicates; throws ArityUnsupported outside 1..3 terms.
TermSet make_term_set(std::vector<std::string> terms);

/// Source of f(·) and N: document counts for term conjunctions.
///
/// Implementations guarantee count(S) ≤ total() and count is non-increasing
/// under supersets.
class FrequencyProvider {
 public:
  virtual ~FrequencyProvider() = default;

  /// Number of documents containing every term. Order and repeats are ignored.
  std::uint64_t count(std::vector<std::string> terms) const {
    return count_set(make_term_set(std::move(terms)));
  }
  virtual std::uint64_t count_set(const TermSet& terms) const = 0;
  virtual std::uint64_t total() const = 0;
  /// Stable identity used in fingerprints (content hash, endpoint, ...).
  virtual std::string id() const = 0;
  virtual bool supports_triples() const { return true; }
};

using ProviderHandle = std::shared_ptr<const FrequencyProvider>;

/// Memoizing decorator: each distinct term set reaches the backend once.
class CachingProvider final : public FrequencyProvider {
 public:
  explicit CachingProvider(ProviderHandle backend) : backend_(std::move(backend)) {}

  std::uint64_t count_set(const TermSet& terms) const override;
  std::uint64_t total() const override;
  std::string id() const override { return backend_->id(); }
  bool supports_triples() const override { return backend_->supports_triples(); }

  /// Distinct term sets fetched from the backend; total() is not counted.
  std::size_t backend_queries() const;

 private:
  ProviderHandle backend_;
  mutable std::mutex mu_;
  mutable std::map<TermSet, std::uint64_t> counts_;
  mutable std::uint64_t total_ = 0;
  mutable bool have_total_ = false;
  mutable std::size_t queries_ = 0;
};

struct Document {
  std::string id;
  std::string text;
};

/// Offline inverted index over a document collection (presence semantics:
/// a document counts once per term regardless of multiplicity).
class CorpusIndex final : public FrequencyProvider {
 public:
  /// Throws DuplicateDocId.
  static CorpusIndex build(const std::vector<Document>& docs);

  const std::vector<std::string>& documents() const noexcept { return doc_ids_; }
  /// Sorted document ordinals containing the (case-folded) token; empty if absent.
  const std::vector<std::uint32_t>& postings(const std::string& token) const;
  std::size_t vocabulary_size() const noexcept { return postings_.size(); }

  /// A term of several words is matched as a consecutive token phrase.
  std::uint64_t count_set(const TermSet& terms) const override;
  std::uint64_t total() const override { return doc_ids_.size(); }
  std::string id() const override { return id_; }

  /// Documents (ordinals) containing `term`, single word or phrase.
  std::vector<std::uint32_t> documents_with(const std::string& term) const;

 private:
  std::vector<std::string> doc_ids_;
  std::vector<std::vector<std::string>> tokens_;  // kept for phrase matching
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
  std::string id_;
};

CorpusIndex index_corpus(const std::vector<Document>& docs);

/// One document per regular file in `dir`, id = file name, sorted.
std::vector<Document> read_corpus_dir(const std::string& dir);

}  // namespace infodist
