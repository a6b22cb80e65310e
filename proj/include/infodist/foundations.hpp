#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace infodist {

/// A finite binary string. The empty string is permitted.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// Parses a string of '0'/'1' characters; anything else throws DomainError.
  static BitString parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  void push_back(bool bit) { bits_.push_back(bit); }
  void append(const BitString& other);
  BitString substr(std::size_t pos, std::size_t count = npos) const;

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<bool> bits_;
};

BitString operator+(BitString a, const BitString& b);

// Strings are identified with naturals by length-then-lexicographic order:
// 0 <-> ε, 1 <-> "0", 2 <-> "1", 3 <-> "00", ...  so ℓ(x) = floor(log2(k+1)).
BitString natural_to_bits(std::uint64_t k);
std::uint64_t bits_to_natural(const BitString& x);

/// 1^ℓ(x) 0 x. Output length is 2ℓ(x)+1.
BitString encode_self_delimiting(const BitString& x);

/// Splits a self-delimiting codeword off the front of `s`.
/// Throws MalformedCode when no separator exists or the payload is truncated.
std::pair<BitString, BitString> decode_self_delimiting(const BitString& s);

/// ⟨x, y⟩ = x̄y
BitString pair(const BitString& x, const BitString& y);
std::pair<BitString, BitString> unpair(const BitString& s);

using Rational = boost::multiprecision::cpp_rational;

/// Finite set of codewords. The prefix property is computed on demand.
class CodewordSet {
 public:
  CodewordSet() = default;
  CodewordSet(std::initializer_list<BitString> words);
  explicit CodewordSet(std::set<BitString> words) : words_(std::move(words)) {}

  static CodewordSet parse(std::initializer_list<std::string_view> words);

  bool insert(BitString w) { return words_.insert(std::move(w)).second; }
  const std::set<BitString>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

  bool is_prefix_set() const;

 private:
  std::set<BitString> words_;
};

struct KraftReport {
  Rational sum;
  bool prefix_set = false;
  bool bound_holds = false;  // sum <= 1
};

KraftReport kraft_sum(const CodewordSet& s);

/// Admissible Hamming distance H_n for equal-length strings, in bits (log2).
/// Returns 0 for equal strings. Throws LengthMismatch, or DomainError for n < 2.
double hamming_admissible(const BitString& x, const BitString& y);

enum class DensityStatus { violated, inconclusive };

struct DensityEntry {
  BitString x;
  double partial_sum = 0.0;  // Σ_{y in sample, y != x} 2^-d(x,y)
  DensityStatus status = DensityStatus::inconclusive;
};

struct DensityReport {
  std::vector<DensityEntry> entries;
  std::size_t violations = 0;

  bool any_violation() const noexcept { return violations > 0; }
};

using BitDistance = std::function<double(const BitString&, const BitString&)>;

/// Partial check of Σ_{y≠x} 2^-D(x,y) ≤ 1 over a finite sample. A partial sum
/// above 1 is a definite violation; anything else is inconclusive.
DensityReport density_audit(const BitDistance& d,
                            const std::vector<BitString>& domain);

/// All 2^n strings of length n, in lexicographic order.
std::vector<BitString> all_strings(std::size_t n);

}  // namespace infodist
