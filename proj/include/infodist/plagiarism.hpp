#pragma once

#include <string>
#include <string_view>

#include "infodist/distances.hpp"

namespace infodist {

/// Language-agnostic token stream: identifiers become "I", quoted literals "S",
/// digit-initial literals "N"; `//`, `#` and `/* */` comments and all
/// whitespace are dropped; other characters pass through.
std::string normalize_tokens(std::string_view source);

/// Sum distance between the normalized streams. Identical streams take the
/// diagonal path: Z(xx) − Z(x) is checked against the identity bound and the
/// score is exactly 0.
DistanceValue plagiarism_score(std::string_view a, std::string_view b, const Compressor& z);
DistanceValue plagiarism_score(std::string_view a, std::string_view b);

}  // namespace infodist
