#include "infodist/frequency.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include "infodist/error.hpp"
#include "infodist/hash.hpp"
#include "infodist/tokenizer.hpp"

namespace infodist {

TermSet make_term_set(std::vector<std::string> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty() || terms.size() > kMaxArity) {
    throw ArityUnsupported("term sets must hold 1 to 3 distinct terms, got " +
                               std::to_string(terms.size()),
                           terms);
  }
  return terms;
}

std::uint64_t CachingProvider::count_set(const TermSet& terms) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = counts_.find(terms); it != counts_.end()) return it->second;
  }
  const std::uint64_t c = backend_->count_set(terms);
  std::lock_guard lock(mu_);
  if (counts_.emplace(terms, c).second) ++queries_;
  return c;
}

std::uint64_t CachingProvider::total() const {
  {
    std::lock_guard lock(mu_);
    if (have_total_) return total_;
  }
  const std::uint64_t n = backend_->total();
  std::lock_guard lock(mu_);
  total_ = n;
  have_total_ = true;
  return n;
}

std::size_t CachingProvider::backend_queries() const {
  std::lock_guard lock(mu_);
  return queries_;
}

// ---- CorpusIndex ----------------------------------------------------------------

CorpusIndex CorpusIndex::build(const std::vector<Document>& docs) {
  CorpusIndex index;
  std::unordered_set<std::string> seen;
  std::string digest_input;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!seen.insert(docs[d].id).second) {
      throw DuplicateDocId("document id '" + docs[d].id + "' appears twice", {docs[d].id});
    }
    index.doc_ids_.push_back(docs[d].id);
    auto tokens = tokenize(docs[d].text);
    const auto ordinal = static_cast<std::uint32_t>(d);
    for (const auto& t : tokens) {
      auto& list = index.postings_[t];
      if (list.empty() || list.back() != ordinal) list.push_back(ordinal);
    }
    index.tokens_.push_back(std::move(tokens));
    digest_input += docs[d].id;
    digest_input += '\0';
    digest_input += docs[d].text;
    digest_input += '\0';
  }
  index.id_ = "corpus:" + sha256_hex(digest_input).substr(0, 16);
  return index;
}

CorpusIndex index_corpus(const std::vector<Document>& docs) { return CorpusIndex::build(docs); }

const std::vector<std::uint32_t>& CorpusIndex::postings(const std::string& token) const {
  static const std::vector<std::uint32_t> kEmpty;
  auto it = postings_.find(token);
  return it == postings_.end() ? kEmpty : it->second;
}

namespace {

std::vector<std::uint32_t> intersect(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains_phrase(const std::vector<std::string>& doc, const std::vector<std::string>& phrase) {
  return std::search(doc.begin(), doc.end(), phrase.begin(), phrase.end()) != doc.end();
}

}  // namespace

std::vector<std::uint32_t> CorpusIndex::documents_with(const std::string& term) const {
  const auto words = tokenize(term);
  if (words.empty()) return {};
  if (words.size() == 1) return postings(words[0]);
  std::vector<std::uint32_t> candidates = postings(words[0]);
  for (std::size_t k = 1; k < words.size() && !candidates.empty(); ++k) {
    candidates = intersect(candidates, postings(words[k]));
  }
  std::vector<std::uint32_t> out;
  for (auto d : candidates) {
    if (contains_phrase(tokens_[d], words)) out.push_back(d);
  }
  return out;
}

std::uint64_t CorpusIndex::count_set(const TermSet& terms) const {
  if (terms.empty() || terms.size() > kMaxArity) {
    throw ArityUnsupported("term sets must hold 1 to 3 terms", terms);
  }
  std::vector<std::uint32_t> docs = documents_with(terms[0]);
  for (std::size_t k = 1; k < terms.size() && !docs.empty(); ++k) {
    docs = intersect(docs, documents_with(terms[k]));
  }
  return docs.size();
}

std::vector<Document> read_corpus_dir(const std::string& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Document> docs;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ProviderFailure("cannot read '" + p.string() + "'", {p.string()});
    docs.push_back({p.filename().string(),
                    std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>())});
  }
  return docs;
}

}  // namespace infodist
