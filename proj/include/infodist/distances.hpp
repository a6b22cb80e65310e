#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infodist/compressors.hpp"
#include "infodist/frequency.hpp"

namespace infodist {

enum class Method { ncd, ncd_unnorm, ncd_sum, nwd, nwd_unnorm, nwd_min, nwd_min_cond };

std::string_view to_string(Method m);
/// Accepts the names above as well as the CLI spellings "ncd-sum", "nwd-min", ...
Method parse_method(std::string_view name);
bool is_compression_method(Method m);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DistanceValue {
  double value = 0.0;  // +inf is the zero-co-occurrence sentinel
  double numerator_bits = 0.0;
  double denominator_bits = 1.0;
  Method method = Method::ncd;

  bool is_infinite() const noexcept { return std::isinf(value); }
};

// ---- compression family ---------------------------------------------------

/// The three lengths entering every compression distance; `joint` is the mean
/// of both concatenation orders.
struct CompressionLengths {
  double x = 0.0;
  double y = 0.0;
  double joint = 0.0;
};

CompressionLengths measure(const Compressor& z, const DataItem& x, const DataItem& y);

DistanceValue ncd_from_lengths(const CompressionLengths& l);
DistanceValue ncd_unnormalized_from_lengths(const CompressionLengths& l);
DistanceValue ncd_sum_from_lengths(const CompressionLengths& l);

/// (Z(xy) − min{Z(x),Z(y)}) / max{Z(x),Z(y)}; numerator clamped at 0.
DistanceValue ncd(const Compressor& z, const DataItem& x, const DataItem& y);
DistanceValue ncd_unnormalized(const Compressor& z, const DataItem& x, const DataItem& y);
/// (2Z(xy) − Z(x) − Z(y)) / Z(xy), clamped into [0, 2].
DistanceValue ncd_sum(const Compressor& z, const DataItem& x, const DataItem& y);

// ---- web family -------------------------------------------------------------

/// Raw statistics for a pair of terms.
struct PairCounts {
  std::uint64_t fx = 0;
  std::uint64_t fy = 0;
  std::uint64_t fxy = 0;
  std::uint64_t n = 0;
};

/// Fails with DegenerateDenominator/ProviderFailure on inconsistent counts;
/// f(x,y) is capped at min{f(x), f(y)}.
DistanceValue nwd_from_counts(const PairCounts& c, double log_base = 2.0);
DistanceValue nwd_unnormalized_from_counts(const PairCounts& c, double log_base = 2.0);
DistanceValue nwd_min_from_counts(const PairCounts& c, double log_base = 2.0);

/// Queries f(x), f(y), f(x,y), N. Throws UnknownTerm when either term is absent.
PairCounts pair_counts(const FrequencyProvider& p, const std::string& x, const std::string& y);

DistanceValue nwd(const FrequencyProvider& p, const std::string& x, const std::string& y,
                  double log_base = 2.0);
DistanceValue nwd_unnormalized(const FrequencyProvider& p, const std::string& x,
                               const std::string& y, double log_base = 2.0);
DistanceValue nwd_min(const FrequencyProvider& p, const std::string& x, const std::string& y,
                      double log_base = 2.0);
/// nwd_min over the sub-universe of documents containing `condition`.
DistanceValue nwd_min_conditional(const FrequencyProvider& p, const std::string& x,
                                  const std::string& y, const std::string& condition,
                                  double log_base = 2.0);

// ---- matrices ---------------------------------------------------------------

struct Fingerprint {
  std::string method;
  std::string backend;  // compressor name or provider id
  double log_base = 2.0;
  std::string tool_version;
  std::optional<std::uint64_t> seed;

  std::string to_string() const;
};

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Labelled symmetric matrix with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> labels, Method method, Fingerprint fingerprint);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  Method method() const noexcept { return method_; }
  const Fingerprint& fingerprint() const noexcept { return fingerprint_; }

  const DistanceValue& cell(std::size_t i, std::size_t j) const { return cells_[i * size() + j]; }
  double operator()(std::size_t i, std::size_t j) const { return cell(i, j).value; }
  /// Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const DistanceValue& v);

  bool has_infinite() const;

 private:
  std::vector<std::string> labels_;
  std::vector<DistanceValue> cells_;
  Method method_ = Method::ncd;
  Fingerprint fingerprint_;
};

/// Compression-family matrix. Each diagonal cell is computed and checked
/// against the compressor's identity bound (IdentityBoundExceeded) before being
/// stored as exactly 0.
DistanceMatrix distance_matrix(const std::vector<DataItem>& items, Method method,
                               const Compressor& z);

/// Web-family matrix over terms (nwd, nwd_unnorm, nwd_min).
DistanceMatrix distance_matrix(const std::vector<std::string>& terms, Method method,
                               const FrequencyProvider& p, double log_base = 2.0);

/// Fixed lexical form: "inf" or 6 significant digits.
std::string format_distance(double v);

std::string to_csv(const DistanceMatrix& m);
std::string to_phylip(const DistanceMatrix& m);
std::string to_json(const DistanceMatrix& m);

/// Reads CSV or JSON as written above (PHYLIP too, without fingerprint).
/// Throws MalformedMatrix.
DistanceMatrix parse_csv_matrix(std::string_view text);
DistanceMatrix parse_json_matrix(std::string_view text);
DistanceMatrix parse_phylip_matrix(std::string_view text);
DistanceMatrix read_matrix_file(const std::string& path);

}  // namespace infodist
