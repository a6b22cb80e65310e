#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace infodist {

inline constexpr std::string_view kTokenizerVersion = "icu-word-casefold-1";

/// Unicode word segmentation (UAX #29 via ICU) keeping only segments that
/// contain letters, digits or ideographs; each token is case-folded. No stemming.
std::vector<std::string> tokenize(std::string_view utf8_text);

std::string fold_case(std::string_view utf8_text);

}  // namespace infodist
