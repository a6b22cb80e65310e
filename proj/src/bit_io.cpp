#include "infodist/bit_io.hpp"

#include <bit>
#include <string>

#include "infodist/error.hpp"

namespace infodist {

void BitWriter::write_bit(bool bit) {
  const auto offset = static_cast<unsigned>(bits_ & 7);
  if (offset == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> offset);
  ++bits_;
}

void BitWriter::write_bits(std::uint64_t value, unsigned count) {
  for (unsigned i = count; i-- > 0;) write_bit(((value >> i) & 1) != 0);
}

unsigned natural_code_length(std::uint64_t k) noexcept {
  const unsigned len = k == UINT64_MAX ? 64u : static_cast<unsigned>(std::bit_width(k + 1) - 1);
  return 2 * len + 1;
}

void BitWriter::write_natural(std::uint64_t k) {
  if (k == UINT64_MAX) {
    // k+1 = 2^64: payload is 64 zero bits.
    for (int i = 0; i < 64; ++i) write_bit(true);
    write_bit(false);
    write_bits(0, 32);
    write_bits(0, 32);
    return;
  }
  const std::uint64_t v = k + 1;
  const auto len = static_cast<unsigned>(std::bit_width(v) - 1);
  for (unsigned i = 0; i < len; ++i) write_bit(true);
  write_bit(false);
  write_bits(v, len);
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
    : bytes_(bytes), limit_(bit_limit) {
  if (bit_limit > static_cast<std::uint64_t>(bytes.size()) * 8) {
    throw MalformedStream("bit limit exceeds buffer size");
  }
}

bool BitReader::read_bit() {
  if (pos_ >= limit_) throw MalformedStream("unexpected end of bit stream");
  const std::uint8_t byte = bytes_[static_cast<std::size_t>(pos_ >> 3)];
  const bool bit = ((byte >> (7 - (pos_ & 7))) & 1) != 0;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::read_bits(unsigned count) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
  return v;
}

std::uint64_t BitReader::read_natural() {
  unsigned len = 0;
  while (read_bit()) {
    if (++len > 64) throw MalformedStream("natural code longer than 64 bits");
  }
  if (len == 64) {
    if (read_bits(32) != 0 || read_bits(32) != 0) {
      throw MalformedStream("natural code overflows 64 bits");
    }
    return UINT64_MAX;
  }
  const std::uint64_t payload = read_bits(len);
  return ((std::uint64_t{1} << len) | payload) - 1;
}

}  // namespace infodist
