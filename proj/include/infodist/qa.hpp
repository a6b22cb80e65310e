#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infodist/frequency.hpp"

namespace infodist {

enum class RankMethod { nwd_min, nwd };

struct RankedAnswer {
  std::string candidate;
  double score = 0.0;  // +inf when the pair never co-occurs
  std::string basis;   // e.g. "nwd_min" or "nwd_min|given=washington"
  bool scorable = true;
  std::string error;   // "<Kind>: message" when not scorable
  std::uint64_t popularity = 0;  // f(candidate), the tie breaker
};

/// Scores each candidate against the key term and sorts ascending: finite
/// scores, then +inf, then unscorable candidates. Equal scores prefer the
/// candidate with the larger f(candidate), then the smaller name.
/// Throws DegenerateInput for an empty candidate list.
std::vector<RankedAnswer> rank_answers(const std::string& key,
                                       const std::vector<std::string>& candidates,
                                       const FrequencyProvider& p,
                                       const std::optional<std::string>& condition = std::nullopt,
                                       RankMethod method = RankMethod::nwd_min,
                                       double log_base = 2.0);

/// JSON list of {candidate, score, basis}; score is a number, "inf" or null.
std::string to_json(const std::vector<RankedAnswer>& ranked);

}  // namespace infodist
