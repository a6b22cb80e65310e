#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "infodist/frequency.hpp"

namespace infodist {

/// Immutable universe of term-set counts plus N.
///
/// Text form (canonical, byte-stable):
///
///     NWD-SNAPSHOT v1
///     N <int>
///     #<key> <value>                 metadata, sorted by key (optional)
///     <term>[\t<term>[\t<term>]]\t<count>
///
/// Terms are percent-encoded (%, #, whitespace and control bytes), each tuple
/// is sorted, tuples are sorted. A closed-world snapshot (`#world closed`)
/// answers 0 for tuples it does not list; an open-world one raises MissingEntry.
class FrequencySnapshot final : public FrequencyProvider {
 public:
  FrequencySnapshot(std::uint64_t n, std::map<TermSet, std::uint64_t> entries,
                    bool closed_world = false, std::map<std::string, std::string> metadata = {});

  /// Queries every tuple from `provider`.
  static FrequencySnapshot capture(const FrequencyProvider& provider,
                                   const std::vector<TermSet>& tuples, bool closed_world,
                                   std::map<std::string, std::string> metadata = {});

  /// Throws MalformedSnapshot naming the offending line.
  static FrequencySnapshot parse(std::string_view text);
  static FrequencySnapshot load(const std::string& path);

  std::string to_text() const;
  void save(const std::string& path) const;

  std::uint64_t count_set(const TermSet& terms) const override;
  std::uint64_t total() const override { return n_; }
  std::string id() const override { return id_; }

  bool closed_world() const noexcept { return closed_world_; }
  const std::map<TermSet, std::uint64_t>& entries() const noexcept { return entries_; }
  const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }

  /// Same universe with N and every count multiplied by `factor`.
  FrequencySnapshot scaled(std::uint64_t factor) const;

 private:
  std::uint64_t n_;
  std::map<TermSet, std::uint64_t> entries_;
  bool closed_world_;
  std::map<std::string, std::string> metadata_;
  std::string id_;
};

/// All term sets of size 1..max_arity drawn from `terms`.
std::vector<TermSet> all_tuples(const std::vector<std::string>& terms, std::size_t max_arity = 2);

std::string percent_encode(std::string_view term);
/// Throws MalformedSnapshot on bad escapes.
std::string percent_decode(std::string_view text);

}  // namespace infodist
