#include "infodist/qa.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "infodist/distances.hpp"
#include "infodist/error.hpp"

namespace infodist {

std::vector<RankedAnswer> rank_answers(const std::string& key,
                                       const std::vector<std::string>& candidates,
                                       const FrequencyProvider& p,
                                       const std::optional<std::string>& condition,
                                       RankMethod method, double log_base) {
  if (candidates.empty()) throw DegenerateInput("no candidate answers given");
  if (method == RankMethod::nwd && condition) {
    throw ConditionUnsupported("a condition term requires the min distance");
  }
  std::string basis = method == RankMethod::nwd ? "nwd" : "nwd_min";
  if (condition) basis += "|given=" + *condition;

  std::vector<RankedAnswer> out;
  for (const auto& cand : candidates) {
    RankedAnswer r;
    r.candidate = cand;
    r.basis = basis;
    try {
      r.popularity = p.count({cand});
    } catch (const Error&) {
      r.popularity = 0;
    }
    try {
      if (method == RankMethod::nwd) {
        r.score = nwd(p, key, cand, log_base).value;
      } else if (condition) {
        r.score = nwd_min_conditional(p, key, cand, *condition, log_base).value;
      } else {
        r.score = nwd_min(p, key, cand, log_base).value;
      }
    } catch (const Error& e) {
      r.scorable = false;
      r.score = kInfinity;
      r.error = e.kind() + ": " + e.what();
    }
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedAnswer& a, const RankedAnswer& b) {
    if (a.scorable != b.scorable) return a.scorable;
    if (a.score != b.score) return a.score < b.score;
    if (a.popularity != b.popularity) return a.popularity > b.popularity;
    return a.candidate < b.candidate;
  });
  return out;
}

std::string to_json(const std::vector<RankedAnswer>& ranked) {
  using nlohmann::ordered_json;
  auto doc = ordered_json::array();
  for (const auto& r : ranked) {
    ordered_json item;
    item["candidate"] = r.candidate;
    if (!r.scorable) item["score"] = nullptr;
    else if (std::isinf(r.score)) item["score"] = "inf";
    else item["score"] = r.score;
    item["basis"] = r.basis;
    if (!r.scorable) item["error"] = r.error;
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

}  // namespace infodist
