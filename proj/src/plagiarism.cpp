#include "infodist/plagiarism.hpp"

#include <algorithm>

#include "infodist/error.hpp"

namespace infodist {

namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::string normalize_tokens(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const char c = s[i];
    if (space(c)) {
      ++i;
    } else if (c == '#' || (c == '/' && i + 1 < n && s[i + 1] == '/')) {
      while (i < n && s[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < n && s[i + 1] == '*') {
      const auto end = s.find("*/", i + 2);
      i = end == std::string_view::npos ? n : end + 2;
    } else if (c == '"' || c == '\'') {
      ++i;
      while (i < n && s[i] != c) i += s[i] == '\\' ? 2 : 1;
      i = std::min(i + 1, n);
      out += 'S';
    } else if (digit(c)) {
      while (i < n && (ident_char(s[i]) || s[i] == '.')) ++i;
      out += 'N';
    } else if (ident_start(c)) {
      while (i < n && ident_char(s[i])) ++i;
      out += 'I';
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

DistanceValue plagiarism_score(std::string_view a, std::string_view b, const Compressor& z) {
  const DataItem x = DataItem::from_string("a", normalize_tokens(a));
  const DataItem y = DataItem::from_string("b", normalize_tokens(b));
  if (x.bytes != y.bytes) return ncd_sum(z, x, y);

  const double single = static_cast<double>(compressed_length(z, x));
  const double excess = static_cast<double>(concat_length(z, x, x)) - single;
  const double bound = z.identity_bound_bits(x.bytes.size());
  if (excess > bound) {
    throw IdentityBoundExceeded("Z(xx) - Z(x) = " + format_distance(excess) + " bits exceeds the " +
                                    z.name() + " identity bound " + format_distance(bound),
                                {"a", "b"});
  }
  return DistanceValue{0.0, 0.0, 2.0 * single + excess, Method::ncd_sum};
}

DistanceValue plagiarism_score(std::string_view a, std::string_view b) {
  return plagiarism_score(a, b, LzCompressor());
}

}  // namespace infodist
