#pragma once

#include <map>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "infodist/random.hpp"
#include "infodist/translation.hpp"

namespace testing_support {

using infodist::Rng;
using infodist::TermDistance;
using infodist::TranslationResult;
using infodist::VocabularyBasis;

// Symmetric random distance table over `words`.
inline std::map<std::pair<std::string, std::string>, double> random_table(const std::vector<std::string>& words,
                                                                   Rng& rng) {
  std::map<std::pair<std::string, std::string>, double> t;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const double v = 0.1 + rng.uniform();
      t[{words[i], words[j]}] = v;
      t[{words[j], words[i]}] = v;
    }
  return t;
}

struct PlantedInstance {
  VocabularyBasis basis;
  std::map<std::pair<std::string, std::string>, double> source, target;
  std::vector<std::string> truth;  // correct target for each unknown source word
};

// Target word of source word "s<i>" is "t<i>"; target distances copy source
// distances (plus optional noise); candidates are listed in `order`.
inline PlantedInstance planted(std::size_t known, std::size_t u, const std::vector<std::size_t>& order, Rng& rng,
                        double noise) {
  PlantedInstance inst;
  std::vector<std::string> src;
  for (std::size_t i = 0; i < known + u; ++i) src.push_back("s" + std::to_string(i));
  inst.source = random_table(src, rng);
  for (const auto& [k, v] : inst.source) {
    const std::string a = "t" + k.first.substr(1), b = "t" + k.second.substr(1);
    if (inst.target.count({b, a})) {
      inst.target[{a, b}] = inst.target[{b, a}];
    } else {
      inst.target[{a, b}] = v + noise * rng.normal();
    }
  }
  for (std::size_t i = 0; i < known; ++i) inst.basis.known.push_back({src[i], "t" + std::to_string(i)});
  for (std::size_t i = 0; i < u; ++i) {
    inst.basis.unknown_source.push_back(src[known + i]);
    inst.truth.push_back("t" + std::to_string(known + i));
  }
  for (auto k : order) inst.basis.candidate_target.push_back("t" + std::to_string(known + k));
  return inst;
}

inline infodist::TermDistance lookup(const std::map<std::pair<std::string, std::string>, double>& t) {
  return [&t](const std::string& a, const std::string& b) { return t.at({a, b}); };
}

inline bool recovered(const PlantedInstance& inst, const TranslationResult& r) {
  if (!r.success) return false;
  for (std::size_t i = 0; i < inst.truth.size(); ++i) {
    if (r.pairs[i].first != inst.basis.unknown_source[i] || r.pairs[i].second != inst.truth[i]) return false;
  }
  return true;
}

inline std::string renamed_identifiers(const std::string& code) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::map<std::string, std::string> names;
  std::string out;
  std::sregex_iterator it(code.begin(), code.end(), ident), end;
  std::size_t last = 0;
  for (; it != end; ++it) {
    out += code.substr(last, static_cast<std::size_t>(it->position()) - last);
    const auto ins = names.emplace(it->str(), "renamed_" + std::to_string(names.size()));
    out += ins.first->second;
    last = static_cast<std::size_t>(it->position() + it->length());
  }
  return out + code.substr(last);
}

inline std::string random_token_stream(Rng& rng, std::size_t tokens) {
  static const std::vector<std::string> kinds = {"x", "42", "\"s\"", "+", "-", "*", "/", "=", "(",
                                                 ")", "{", "}", ";", ",", "<", ">", "[", "]", "!", "&"};
  std::string out;
  for (std::size_t i = 0; i < tokens; ++i) out += kinds[rng.index(kinds.size())] + " ";
  return out;
}

}  // namespace testing_support
