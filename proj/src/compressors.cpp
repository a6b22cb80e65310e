#include "infodist/compressors.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

#include <boost/iostreams/copy.hpp>
#include <boost/iostreams/device/array.hpp>
#include <boost/iostreams/device/back_inserter.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filter/lzma.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include "infodist/calibration.hpp"
#include "infodist/error.hpp"
#include "infodist/lz.hpp"

namespace infodist {

namespace io = boost::iostreams;

DataItem DataItem::from_string(std::string label, std::string_view text,
                               std::string source) {
  return DataItem{std::move(label), Bytes(text.begin(), text.end()), std::move(source)};
}

DataItem read_data_item(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecFailure("cannot open '" + path + "'", {path});
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return DataItem{std::filesystem::path(path).filename().string(), std::move(bytes), path};
}

std::vector<DataItem> read_data_items(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<DataItem> items;
  items.reserve(paths.size());
  for (const auto& p : paths) items.push_back(read_data_item(p));
  return items;
}

double Compressor::identity_bound_bits(std::size_t) const {
  return std::numeric_limits<double>::infinity();
}

std::uint64_t compressed_length(const Compressor& z, const DataItem& x) {
  return z.compressed_bits(x.bytes);
}

std::uint64_t concat_length(const Compressor& z, const DataItem& x, const DataItem& y) {
  Bytes joined;
  joined.reserve(x.bytes.size() + y.bytes.size());
  joined.insert(joined.end(), x.bytes.begin(), x.bytes.end());
  joined.insert(joined.end(), y.bytes.begin(), y.bytes.end());
  return z.compressed_bits(joined);
}

std::uint64_t LzCompressor::compressed_bits(std::span<const std::uint8_t> data) const {
  return lz_compress(data).bit_length;
}

double LzCompressor::identity_bound_bits(std::size_t n_bytes) const {
  const double n_bits = std::max(2.0, 8.0 * static_cast<double>(n_bytes));
  return calibration::kLzIdentityBeta + calibration::kLzIdentityGamma * std::log2(n_bits);
}

std::string CodecCompressor::name() const {
  switch (kind_) {
    case CodecKind::gzip: return "gzip";
    case CodecKind::bzip2: return "bzip2";
    case CodecKind::xz: return "xz";
  }
  return "?";
}

std::optional<std::size_t> CodecCompressor::window() const {
  switch (kind_) {
    case CodecKind::gzip: return 32 * 1024;
    case CodecKind::bzip2: return 900 * 1000;     // block size at level 9
    case CodecKind::xz: return 8 * 1024 * 1024;   // dictionary at preset 6
  }
  return std::nullopt;
}

double CodecCompressor::identity_bound_bits(std::size_t n_bytes) const {
  // Z(xx) ≈ Z(x) only while both copies fit in the codec's history.
  if (2 * n_bytes > *window()) return std::numeric_limits<double>::infinity();
  const double bits = 8.0 * static_cast<double>(n_bytes);
  switch (kind_) {
    case CodecKind::gzip:
      return calibration::kGzipIdentityBits + calibration::kGzipIdentityRate * bits;
    case CodecKind::bzip2:
      return calibration::kBzip2IdentityBits + calibration::kBzip2IdentityRate * bits;
    case CodecKind::xz:
      return calibration::kXzIdentityBits + calibration::kXzIdentityRate * bits;
  }
  return std::numeric_limits<double>::infinity();
}

Bytes CodecCompressor::compress(std::span<const std::uint8_t> data) const {
  std::string out;
  try {
    io::filtering_ostream os;
    switch (kind_) {
      case CodecKind::gzip: os.push(io::gzip_compressor(io::gzip_params(9))); break;
      case CodecKind::bzip2: os.push(io::bzip2_compressor(io::bzip2_params(9))); break;
      case CodecKind::xz: os.push(io::lzma_compressor(io::lzma_params(6))); break;
    }
    os.push(io::back_inserter(out));
    os.write(reinterpret_cast<const char*>(data.data()),
             static_cast<std::streamsize>(data.size()));
    os.reset();
  } catch (const std::exception& e) {
    throw CodecFailure(name() + " compression failed: " + e.what());
  }
  return Bytes(out.begin(), out.end());
}

Bytes CodecCompressor::decompress(std::span<const std::uint8_t> data) const {
  std::string out;
  try {
    io::filtering_istream is;
    switch (kind_) {
      case CodecKind::gzip: is.push(io::gzip_decompressor()); break;
      case CodecKind::bzip2: is.push(io::bzip2_decompressor()); break;
      case CodecKind::xz: is.push(io::lzma_decompressor()); break;
    }
    is.push(io::array_source(reinterpret_cast<const char*>(data.data()), data.size()));
    io::copy(is, io::back_inserter(out));
  } catch (const std::exception& e) {
    throw CodecFailure(name() + " decompression failed: " + e.what());
  }
  return Bytes(out.begin(), out.end());
}

std::uint64_t CodecCompressor::compressed_bits(std::span<const std::uint8_t> data) const {
  return 8 * static_cast<std::uint64_t>(compress(data).size());
}

CompressorHandle make_compressor(std::string_view name) {
  if (name == "lz") return std::make_shared<LzCompressor>();
  if (name == "gzip") return std::make_shared<CodecCompressor>(CodecKind::gzip);
  if (name == "bzip2") return std::make_shared<CodecCompressor>(CodecKind::bzip2);
  if (name == "xz") return std::make_shared<CodecCompressor>(CodecKind::xz);
  throw UnknownCompressor("no compressor named '" + std::string(name) + "'",
                          {std::string(name)});
}

std::vector<std::string> available_compressors() {
  return {"lz", "gzip", "bzip2", "xz"};
}

}  // namespace infodist
