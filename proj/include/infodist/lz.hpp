#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace infodist {

/// Output of the unbounded-window LZ coder. `bit_length` is the exact number of
/// meaningful bits; `bytes` is that bit stream zero-padded to a byte boundary.
struct LzStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_length = 0;
};

/// Longest match of position i against any earlier start j < i
/// (overlapping matches allowed). `source` is meaningless when length == 0.
struct PreviousFactor {
  std::uint32_t length = 0;
  std::uint32_t source = 0;
};

/// Longest previous factor for every position, computed from a suffix array.
std::vector<PreviousFactor> longest_previous_factors(std::span<const std::uint8_t> data);

inline constexpr std::uint32_t kLzMinMatch = 4;

/// Greedy longest-match LZ77 over the whole preceding history.
///
/// Stream layout (MSB first):
///   natural(n)                                        total output bytes
///   0 natural(run-1) run*8 raw bits                   literal run
///   1 natural(length-4) natural(offset-1)             back reference
/// where natural() is the self-delimiting code from bit_io.hpp. A match is taken
/// only when it is at least kLzMinMatch long and its code is shorter than the
/// literal bytes it replaces.
LzStream lz_compress(std::span<const std::uint8_t> data);

/// Inverse of lz_compress. Trailing bits after the last token must be zero
/// padding shorter than one byte. Throws MalformedStream otherwise.
std::vector<std::uint8_t> lz_decompress(std::span<const std::uint8_t> stream);

}  // namespace infodist
