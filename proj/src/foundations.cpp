#include "infodist/foundations.hpp"

#include <algorithm>
#include <cmath>

#include "infodist/error.hpp"

namespace infodist {

BitString BitString::parse(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DomainError("bit string contains non-binary character '" +
                        std::string(1, c) + "'");
    }
    bits.push_back(c == '1');
  }
  return BitString(std::move(bits));
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::substr(std::size_t pos, std::size_t count) const {
  pos = std::min(pos, bits_.size());
  const std::size_t end =
      count == npos ? bits_.size() : std::min(bits_.size(), pos + count);
  return BitString(std::vector<bool>(bits_.begin() + pos, bits_.begin() + end));
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

BitString operator+(BitString a, const BitString& b) {
  a.append(b);
  return a;
}

BitString natural_to_bits(std::uint64_t k) {
  // k+1 in binary without its leading 1 is the k-th string.
  const unsigned __int128 v = static_cast<unsigned __int128>(k) + 1;
  int top = 127;
  while (((v >> top) & 1) == 0) --top;
  std::vector<bool> bits;
  bits.reserve(static_cast<std::size_t>(top));
  for (int i = top - 1; i >= 0; --i) bits.push_back(((v >> i) & 1) != 0);
  return BitString(std::move(bits));
}

std::uint64_t bits_to_natural(const BitString& x) {
  if (x.size() > 63) throw DomainError("bit string too long for a 64-bit natural");
  std::uint64_t v = 1;
  for (bool b : x.bits()) v = (v << 1) | (b ? 1u : 0u);
  return v - 1;
}

BitString encode_self_delimiting(const BitString& x) {
  std::vector<bool> out(x.size(), true);
  out.reserve(2 * x.size() + 1);
  out.push_back(false);
  out.insert(out.end(), x.bits().begin(), x.bits().end());
  return BitString(std::move(out));
}

std::pair<BitString, BitString> decode_self_delimiting(const BitString& s) {
  std::size_t ones = 0;
  while (ones < s.size() && s[ones]) ++ones;
  if (ones == s.size()) {
    throw MalformedCode("no separator zero in '" + s.to_string() + "'");
  }
  const std::size_t start = ones + 1;
  if (s.size() - start < ones) {
    throw MalformedCode("codeword announces " + std::to_string(ones) +
                        " payload bits but only " +
                        std::to_string(s.size() - start) + " remain");
  }
  return {s.substr(start, ones), s.substr(start + ones)};
}

BitString pair(const BitString& x, const BitString& y) {
  return encode_self_delimiting(x) + y;
}

std::pair<BitString, BitString> unpair(const BitString& s) {
  return decode_self_delimiting(s);
}

CodewordSet::CodewordSet(std::initializer_list<BitString> words)
    : words_(words.begin(), words.end()) {}

CodewordSet CodewordSet::parse(std::initializer_list<std::string_view> words) {
  CodewordSet set;
  for (auto w : words) set.insert(BitString::parse(w));
  return set;
}

bool CodewordSet::is_prefix_set() const {
  // In lexicographic order a word that prefixes some later word also prefixes
  // its immediate successor.
  const BitString* prev = nullptr;
  for (const auto& w : words_) {
    if (prev != nullptr && prev->size() <= w.size() &&
        std::equal(prev->bits().begin(), prev->bits().end(), w.bits().begin())) {
      return false;
    }
    prev = &w;
  }
  return true;
}

KraftReport kraft_sum(const CodewordSet& s) {
  KraftReport report;
  for (const auto& w : s.words()) {
    boost::multiprecision::cpp_int denom = 1;
    denom <<= static_cast<unsigned>(w.size());
    report.sum += Rational(1, denom);
  }
  report.prefix_set = s.is_prefix_set();
  report.bound_holds = report.sum <= 1;
  return report;
}

double hamming_admissible(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("strings of length " + std::to_string(x.size()) +
                         " and " + std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("H_n needs n >= 2, got n = " + std::to_string(n));
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) m += x[i] != y[i] ? 1 : 0;
  if (m == 0) return 0.0;
  const double logn = std::log2(static_cast<double>(n));
  return 2.0 * logn + 4.0 * std::log2(logn) + 2.0 + static_cast<double>(m) * logn;
}

DensityReport density_audit(const BitDistance& d,
                            const std::vector<BitString>& domain) {
  DensityReport report;
  report.entries.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    DensityEntry e{domain[i], 0.0, DensityStatus::inconclusive};
    for (std::size_t j = 0; j < domain.size(); ++j) {
      if (i == j || domain[i] == domain[j]) continue;
      e.partial_sum += std::exp2(-d(domain[i], domain[j]));
    }
    if (e.partial_sum > 1.0) {
      e.status = DensityStatus::violated;
      ++report.violations;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<BitString> all_strings(std::size_t n) {
  if (n > 24) throw DomainError("refusing to enumerate 2^" + std::to_string(n) + " strings");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = ((v >> (n - 1 - i)) & 1) != 0;
    out.emplace_back(std::move(bits));
  }
  return out;
}

}  // namespace infodist
