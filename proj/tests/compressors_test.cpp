#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "infodist/audit.hpp"
#include "infodist/calibration.hpp"
#include "infodist/compressors.hpp"
#include "infodist/distances.hpp"
#include "infodist/error.hpp"
#include "infodist/lz.hpp"
#include "infodist/random.hpp"
#include "test_support.hpp"

using namespace infodist;
using namespace testing_support;

namespace {

std::uint64_t lz_bits(const Bytes& b) { return LzCompressor().compressed_bits(b); }

DataItem item(std::string label, Bytes b) { return DataItem{std::move(label), std::move(b), "test"}; }

// O(n^2) longest previous factor, for cross-checking the suffix-array version.
std::vector<std::uint32_t> naive_lpf(const Bytes& s) {
  std::vector<std::uint32_t> out(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::uint32_t l = 0;
      while (i + l < s.size() && s[j + l] == s[i + l]) ++l;
      out[i] = std::max(out[i], l);
    }
  }
  return out;
}

Bytes structured_input(Rng& rng, std::size_t n) {
  Bytes out;
  const std::size_t period = 1 + rng.index(17);
  Bytes motif = random_bytes(rng, period);
  while (out.size() < n) {
    if (rng.index(8) == 0) {
      out.push_back(static_cast<std::uint8_t>(rng.index(256)));
    } else {
      out.insert(out.end(), motif.begin(), motif.end());
    }
  }
  out.resize(n);
  return out;
}

const std::vector<DataItem>& text_fixtures() {
  static const auto items = read_data_items(text_fixture_dir());
  return items;
}

}  // namespace

TEST(Lz, RoundTripsRandomAndStructuredInputs) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng.index(trial % 10 == 0 ? 5000 : 300);
    const Bytes x = trial % 2 ? random_bytes(rng, n) : structured_input(rng, n);
    const auto stream = lz_compress(x);
    ASSERT_EQ(lz_decompress(stream.bytes), x) << "trial " << trial;
    ASSERT_EQ((stream.bit_length + 7) / 8, stream.bytes.size());
  }
}

TEST(Lz, RoundTripsOneMegabyte) {
  Rng rng(2);
  Bytes x = structured_input(rng, 1 << 19);
  const Bytes r = random_bytes(rng, 1 << 19);
  x.insert(x.end(), r.begin(), r.end());
  EXPECT_EQ(lz_decompress(lz_compress(x).bytes), x);
}

TEST(Lz, RoundTripsFixtureTexts) {
  for (const auto& x : text_fixtures()) {
    EXPECT_EQ(lz_decompress(lz_compress(x.bytes).bytes), x.bytes) << x.label;
  }
}

TEST(Lz, RejectsMalformedStreams) {
  EXPECT_THROW(lz_decompress(Bytes{}), MalformedStream);
  EXPECT_THROW(lz_decompress(Bytes{0xff, 0xff, 0xff}), MalformedStream);
  auto good = lz_compress(to_bytes("hello hello hello hello")).bytes;
  good.pop_back();
  EXPECT_THROW(lz_decompress(good), MalformedStream);
  auto padded = lz_compress(to_bytes("abc")).bytes;
  padded.push_back(0);
  EXPECT_THROW(lz_decompress(padded), MalformedStream);
}

TEST(Lz, LongestPreviousFactorMatchesNaiveScan) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    Bytes x(rng.index(200));
    for (auto& b : x) b = static_cast<std::uint8_t>('a' + rng.index(trial % 2 ? 2 : 5));
    const auto lpf = longest_previous_factors(x);
    const auto expected = naive_lpf(x);
    ASSERT_EQ(lpf.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      ASSERT_EQ(lpf[i].length, expected[i]) << "trial " << trial << " i=" << i;
      if (lpf[i].length > 0) {
        ASSERT_LT(lpf[i].source, i);
        for (std::uint32_t k = 0; k < lpf[i].length; ++k) ASSERT_EQ(x[lpf[i].source + k], x[i + k]);
      }
    }
  }
}

TEST(Lz, ZerosCompressBelow800Bits) { EXPECT_LT(lz_bits(Bytes(10000, 0)), 800u); }

TEST(Lz, AlternatingPairCompressesBelowOnePercent) {
  std::string ab;
  for (int i = 0; i < 5000; ++i) ab += "ab";
  EXPECT_LT(lz_bits(to_bytes(ab)), static_cast<std::uint64_t>(0.01 * 8 * ab.size()));
}

TEST(Lz, RandomInputIsIncompressible) {
  Rng rng(10000);
  const Bytes x = random_bytes(rng, 10000);
  EXPECT_GE(static_cast<double>(lz_bits(x)), 0.95 * 8 * 10000);
}

TEST(Lz, SecondCopyCostsLogarithmicBits) {
  Rng rng(6);
  for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
    for (const Bytes& x : {random_bytes(rng, n), structured_input(rng, n), markov_dna(rng, n, 0.5)}) {
      Bytes xx = x;
      xx.insert(xx.end(), x.begin(), x.end());
      const double excess = static_cast<double>(lz_bits(xx)) - static_cast<double>(lz_bits(x));
      ASSERT_LE(excess, calibration::kLzIdentityBeta +
                            calibration::kLzIdentityGamma * std::log2(8.0 * static_cast<double>(n)))
          << "n=" << n;
    }
  }
}

TEST(Lz, EmptyInputIsOneBit) {
  EXPECT_EQ(lz_bits({}), static_cast<std::uint64_t>(calibration::kLzEmptyBits));
}

TEST(Compressors, DeterministicAcrossRepeatedCalls) {
  const auto& x = text_fixtures().front();
  for (const auto& name : available_compressors()) {
    const auto z = make_compressor(name);
    const auto first = compressed_length(*z, x);
    for (int i = 0; i < 10; ++i) ASSERT_EQ(compressed_length(*z, x), first) << name;
  }
}

TEST(Compressors, RegistryHasDeflateAndBlockSortingClasses) {
  const auto names = available_compressors();
  for (const char* n : {"lz", "gzip", "bzip2", "xz"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    EXPECT_EQ(make_compressor(n)->name(), n);
  }
  EXPECT_FALSE(make_compressor("lz")->window().has_value());
  EXPECT_EQ(make_compressor("gzip")->window(), std::optional<std::size_t>(32768));
  EXPECT_THROW(make_compressor("ppmz"), UnknownCompressor);
}

TEST(Compressors, EmptyInputCostsFrozenHeader) {
  EXPECT_EQ(make_compressor("gzip")->compressed_bits({}), calibration::kGzipEmptyBits);
  EXPECT_EQ(make_compressor("bzip2")->compressed_bits({}), calibration::kBzip2EmptyBits);
  EXPECT_EQ(make_compressor("xz")->compressed_bits({}), calibration::kXzEmptyBits);
}

TEST(Compressors, CodecsRoundTripAndRejectGarbage) {
  Rng rng(9);
  const Bytes x = structured_input(rng, 20000);
  for (auto kind : {CodecKind::gzip, CodecKind::bzip2, CodecKind::xz}) {
    CodecCompressor c(kind);
    const Bytes packed = c.compress(x);
    EXPECT_EQ(c.decompress(packed), x) << c.name();
    EXPECT_EQ(c.compressed_bits(x), 8 * packed.size());
    EXPECT_THROW(c.decompress(to_bytes("definitely not compressed")), CodecFailure) << c.name();
  }
}

TEST(Compressors, ConcatWithEmptyEqualsSingle) {
  const DataItem empty = item("e", {});
  for (const auto& name : available_compressors()) {
    const auto z = make_compressor(name);
    for (const auto& x : text_fixtures()) {
      EXPECT_EQ(concat_length(*z, x, empty), compressed_length(*z, x)) << name << " " << x.label;
      EXPECT_EQ(concat_length(*z, empty, x), compressed_length(*z, x)) << name << " " << x.label;
    }
  }
}

TEST(Compressors, LzSelfConcatOfFiftyKilobyteText) {
  LzCompressor lz;
  std::string all;
  for (const auto& x : text_fixtures()) all.append(x.bytes.begin(), x.bytes.end());
  const DataItem x = DataItem::from_string("50k", all.substr(0, 50000));
  const double zx = static_cast<double>(compressed_length(lz, x));
  EXPECT_LE(static_cast<double>(concat_length(lz, x, x)), zx + 0.05 * zx);
}

TEST(Compressors, IndependentRandomHalvesAddUp) {
  Rng rng(12);
  const DataItem x = item("x", random_bytes(rng, 10000));
  const DataItem y = item("y", random_bytes(rng, 10000));
  for (const char* name : {"lz", "gzip", "xz"}) {
    const auto z = make_compressor(name);
    const double sum = static_cast<double>(compressed_length(*z, x) + compressed_length(*z, y));
    EXPECT_NEAR(static_cast<double>(concat_length(*z, x, y)), sum, 0.02 * sum) << name;
  }
}

TEST(Compressors, ConcatNeverShrinksBelowSingleMinusHeader) {
  const auto& items = text_fixtures();
  for (const auto& name : available_compressors()) {
    const auto z = make_compressor(name);
    const double slack = name == "lz" ? calibration::kLzEmptyBits
                         : name == "gzip" ? calibration::kGzipEmptyBits
                         : name == "bzip2" ? calibration::kBzip2EmptyBits
                                           : calibration::kXzEmptyBits;
    for (std::size_t i = 0; i + 1 < items.size(); i += 3) {
      const auto& x = items[i];
      const auto& y = items[i + 1];
      EXPECT_GE(static_cast<double>(concat_length(*z, x, y)),
                static_cast<double>(compressed_length(*z, x)) - slack)
          << name << " " << x.label << "+" << y.label;
    }
  }
}

TEST(Compressors, ComplementOfRandomLooksIndependentToByteLz) {
  // Byte-level matching cannot see that y = ~x; the frozen measurement is
  // 0.99936 for this seed.
  Rng rng(1);
  const Bytes x = random_bytes(rng, 10000);
  Bytes y = x;
  for (auto& b : y) b = static_cast<std::uint8_t>(~b);
  const double v = ncd(LzCompressor(), item("x", x), item("y", y)).value;
  EXPECT_NEAR(v, 0.99936, 0.0005);
}

TEST(NormalityAudit, RequiresThreeItems) {
  LzCompressor lz;
  EXPECT_THROW(normality_audit(lz, {item("a", {1}), item("b", {2})}), CorpusTooSmall);
}

TEST(NormalityAudit, NoCompressionViolatesIdentityMaximally) {
  IdentityCompressor z;
  std::vector<DataItem> corpus = {item("a", to_bytes("alpha")), item("b", to_bytes("bravo!")),
                                  item("c", to_bytes("charlie12"))};
  const auto report = normality_audit(z, corpus);
  const auto& id = report.row("identity");
  EXPECT_EQ(id.worst_bits, 72.0);  // Z(xx) − Z(x) = Z(x) for the longest item
  EXPECT_EQ(id.labels, std::vector<std::string>{"c"});
  EXPECT_EQ(report.row("symmetry").worst_bits, 0.0);
  EXPECT_EQ(report.row("monotonicity").worst_bits, 0.0);
  EXPECT_EQ(report.row("distributivity").worst_bits, 0.0);
  EXPECT_EQ(report.empty_bits, 0.0);
}

TEST(NormalityAudit, SetUnionCompressorIsExactlyNormal) {
  Rng rng(13);
  std::vector<std::uint64_t> w(256);
  for (auto& x : w) x = 1 + rng.index(1000);
  SetUnionCompressor z(w);
  std::vector<DataItem> corpus;
  for (int i = 0; i < 8; ++i) {
    Bytes b(1 + rng.index(30));
    for (auto& c : b) c = static_cast<std::uint8_t>(rng.index(40));
    corpus.push_back(item("s" + std::to_string(i), b));
  }
  const auto report = normality_audit(z, corpus);
  for (const auto& row : report.rows) EXPECT_EQ(row.worst_bits, 0.0) << row.axiom;
}

TEST(NormalityAudit, SymmetryOfSelfPairIsExactlyZero) {
  for (const auto& name : available_compressors()) {
    const auto z = make_compressor(name);
    const auto& x = text_fixtures()[3];
    EXPECT_EQ(concat_length(*z, x, x), concat_length(*z, x, x));
    const auto l = measure(*z, x, x);
    EXPECT_EQ(l.x, l.y);
  }
}

TEST(NormalityAudit, LzOnFixtureCorpusWithinFrozenBounds) {
  ASSERT_EQ(text_fixtures().size(), 20u);
  for (const auto& x : text_fixtures()) {
    ASSERT_GE(x.bytes.size(), 10000u) << x.label;
    ASSERT_LE(x.bytes.size(), 100000u) << x.label;
  }
  const auto report = normality_audit(LzCompressor(), text_fixtures(), {.seed = 1});
  EXPECT_LE(report.row("identity").worst_per_logn, calibration::kLzIdentityPerLogN);
  EXPECT_EQ(report.row("monotonicity").worst_bits, 0.0);
  EXPECT_EQ(report.row("identity").samples, 20u);
  EXPECT_EQ(report.row("symmetry").samples, 190u);
  EXPECT_EQ(report.row("distributivity").samples, 2000u);
  EXPECT_EQ(report.empty_bits, calibration::kLzEmptyBits);
}

TEST(NormalityAudit, SubsampledTriplesAreSeeded) {
  LzCompressor lz;
  std::vector<DataItem> corpus(text_fixtures().begin(), text_fixtures().begin() + 6);
  const AuditOptions opt{.seed = 5, .max_triples = 30};
  const auto a = normality_audit(lz, corpus, opt);
  const auto b = normality_audit(lz, corpus, opt);
  EXPECT_EQ(a.row("distributivity").samples, 30u);
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(NormalityAudit, JsonAndTextCarryEveryAxiom) {
  std::vector<DataItem> corpus(text_fixtures().begin(), text_fixtures().begin() + 3);
  LzCompressor lz;
  const auto report = normality_audit(lz, corpus);
  const auto exp = expansion_audit(lz, corpus);
  const auto doc = nlohmann::json::parse(to_json(report, &exp));
  ASSERT_EQ(doc["axioms"].size(), 4u);
  for (const auto& row : doc["axioms"]) {
    EXPECT_TRUE(row.contains("axiom"));
    EXPECT_TRUE(row.contains("worst_bits"));
    EXPECT_TRUE(row.contains("worst_per_logn"));
    EXPECT_TRUE(row.contains("labels"));
    EXPECT_GE(row["worst_bits"].get<double>(), 0.0);
  }
  EXPECT_EQ(doc["expansion"]["passed"], true);
  const auto text = to_text(report);
  for (const char* axiom : {"identity", "monotonicity", "symmetry", "distributivity"}) {
    EXPECT_NE(text.find(axiom), std::string::npos);
  }
}

TEST(ExpansionAudit, LzOnRandomBytesWithinCeiling) {
  std::vector<DataItem> corpus;
  for (std::size_t n : {1u, 10u, 1000u, 100000u}) {
    Rng rng(n);
    corpus.push_back(item("r" + std::to_string(n), random_bytes(rng, n)));
  }
  const auto r = expansion_audit(LzCompressor(), corpus);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.worst_constant_bits, 1024.0);
}

TEST(ExpansionAudit, PlainLengthHasNonPositiveConstant) {
  std::vector<DataItem> corpus = {item("a", to_bytes("x")), item("b", Bytes(1000, 7))};
  const auto r = expansion_audit(IdentityCompressor(), corpus);
  EXPECT_LE(r.worst_constant_bits, 0.0);
}

TEST(ExpansionAudit, CodecOnEmptyReportsHeader) {
  for (const char* name : {"gzip", "bzip2", "xz"}) {
    const auto z = make_compressor(name);
    const auto r = expansion_audit(*z, {item("empty", {})});
    EXPECT_EQ(r.worst_constant_bits, static_cast<double>(z->compressed_bits({}))) << name;
  }
  const auto fail = expansion_audit(*make_compressor("gzip"), {item("empty", {})}, 10.0);
  EXPECT_FALSE(fail.passed);
}
