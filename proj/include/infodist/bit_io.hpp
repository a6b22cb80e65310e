#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace infodist {

/// MSB-first bit sink backed by a byte vector; tracks the exact bit count.
class BitWriter {
 public:
  void write_bit(bool bit);
  void write_bits(std::uint64_t value, unsigned count);  // high bit first

  /// Natural k as the self-delimiting code of its length-lex string:
  /// ℓ ones, a zero, then the ℓ payload bits, ℓ = floor(log2(k+1)).
  void write_natural(std::uint64_t k);

  std::uint64_t bit_count() const noexcept { return bits_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::vector<std::uint8_t> take_bytes() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bits_ = 0;
};

/// Cost in bits of BitWriter::write_natural(k).
unsigned natural_code_length(std::uint64_t k) noexcept;

/// Reads a stream produced by BitWriter. Reading past `bit_limit` throws
/// MalformedStream.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit);
  explicit BitReader(std::span<const std::uint8_t> bytes)
      : BitReader(bytes, static_cast<std::uint64_t>(bytes.size()) * 8) {}

  bool read_bit();
  std::uint64_t read_bits(unsigned count);
  std::uint64_t read_natural();

  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t limit_;
  std::uint64_t pos_ = 0;
};

}  // namespace infodist
