#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infodist {

using Bytes = std::vector<std::uint8_t>;

/// A labelled byte sequence; the input of every literal-object distance.
struct DataItem {
  std::string label;
  Bytes bytes;
  std::string source;  // file path or generator id

  static DataItem from_string(std::string label, std::string_view text,
                              std::string source = {});
};

/// Reads a file as a DataItem labelled with the file name.
DataItem read_data_item(const std::string& path);

/// Every regular file in `dir`, sorted by file name.
std::vector<DataItem> read_data_items(const std::string& dir);

enum class Granularity { bits, bytes };

/// A deterministic compressed-length function Z(·). Lengths are always reported
/// in bits; byte-granular codecs report 8·bytes.
class Compressor {
 public:
  virtual ~Compressor() = default;

  virtual std::string name() const = 0;
  /// Effective history in bytes; nullopt means unbounded.
  virtual std::optional<std::size_t> window() const = 0;
  virtual Granularity granularity() const = 0;
  virtual std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const = 0;

  /// Largest Z(xx) − Z(x) in bits tolerated for an input of `n_bytes`, used by
  /// the distance-matrix diagonal check. +inf when the input exceeds what the
  /// codec can see at once.
  virtual double identity_bound_bits(std::size_t n_bytes) const;
};

using CompressorHandle = std::shared_ptr<const Compressor>;

std::uint64_t compressed_length(const Compressor& z, const DataItem& x);

/// Z(x‖y), no separator.
std::uint64_t concat_length(const Compressor& z, const DataItem& x, const DataItem& y);

/// In-repo unbounded-window LZ; exact bit lengths.
class LzCompressor final : public Compressor {
 public:
  std::string name() const override { return "lz"; }
  std::optional<std::size_t> window() const override { return std::nullopt; }
  Granularity granularity() const override { return Granularity::bits; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override;
  double identity_bound_bits(std::size_t n_bytes) const override;
};

/// Off-the-shelf codecs reached through Boost.Iostreams.
enum class CodecKind { gzip, bzip2, xz };

class CodecCompressor final : public Compressor {
 public:
  explicit CodecCompressor(CodecKind kind) : kind_(kind) {}

  std::string name() const override;
  std::optional<std::size_t> window() const override;
  Granularity granularity() const override { return Granularity::bytes; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override;
  double identity_bound_bits(std::size_t n_bytes) const override;

  /// Raw codec output; throws CodecFailure on any stream error.
  Bytes compress(std::span<const std::uint8_t> data) const;
  Bytes decompress(std::span<const std::uint8_t> data) const;

 private:
  CodecKind kind_;
};

/// "lz", "gzip", "bzip2", "xz". Throws UnknownCompressor.
CompressorHandle make_compressor(std::string_view name);
std::vector<std::string> available_compressors();

}  // namespace infodist
