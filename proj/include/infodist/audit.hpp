#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "infodist/calibration.hpp"
#include "infodist/compressors.hpp"

namespace infodist {

/// Worst observed deviation from one normal-compressor axiom.
struct AxiomRow {
  std::string axiom;  // identity | monotonicity | symmetry | distributivity
  double worst_bits = 0.0;
  double worst_per_logn = 0.0;
  std::vector<std::string> labels;          // instance attaining worst_bits
  std::vector<std::string> labels_per_logn; // instance attaining worst_per_logn
  std::size_t samples = 0;
};

struct AxiomReport {
  std::string compressor;
  std::uint64_t seed = 0;
  double empty_bits = 0.0;  // Z(ε); the identity axiom asks for 0
  std::vector<AxiomRow> rows;

  /// Throws std::out_of_range for an unknown axiom name.
  const AxiomRow& row(std::string_view axiom) const;
};

struct AuditOptions {
  std::uint64_t seed = 0;
  std::size_t max_triples = 2000;  // ordered triples beyond this are subsampled
};

/// Measures identity, monotonicity, symmetry and distributivity deviations on a
/// corpus of at least three items. Each deviation is also divided by log2 n,
/// n the largest binary length taking part in that (in)equality.
AxiomReport normality_audit(const Compressor& z, const std::vector<DataItem>& corpus,
                            const AuditOptions& options = {});

struct ExpansionReport {
  std::string compressor;
  double worst_constant_bits = 0.0;  // max Z(x) − (8ℓ + 2 log2 8ℓ)
  std::string worst_label;
  double ceiling_bits = calibration::kExpansionCeilingBits;
  bool passed = true;
};

ExpansionReport expansion_audit(const Compressor& z, const std::vector<DataItem>& corpus,
                                double ceiling_bits = calibration::kExpansionCeilingBits);

std::string to_text(const AxiomReport& report);
std::string to_json(const AxiomReport& report, const ExpansionReport* expansion = nullptr);

}  // namespace infodist
