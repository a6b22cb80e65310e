#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "infodist/distances.hpp"
#include "infodist/error.hpp"
#include "infodist/frequency.hpp"
#include "infodist/random.hpp"
#include "infodist/snapshot.hpp"
#include "test_support.hpp"

using namespace infodist;
using namespace testing_support;

namespace {

// Items "x" and "y" with the given Z(x), Z(y) and Z(xy) = Z(yx).
struct MockPair {
  TableCompressor z;
  DataItem x = DataItem::from_string("x", "x");
  DataItem y = DataItem::from_string("y", "y");
  MockPair(std::uint64_t zx, std::uint64_t zy, std::uint64_t zxy) {
    z.set("x", zx);
    z.set("y", zy);
    z.set("xy", zxy);
    z.set("yx", zxy);
  }
};

// Independent evaluation of the web formulas, straight from the definitions.
double oracle_nwd(double fx, double fy, double fxy, double n) {
  if (fxy == 0) return kInfinity;
  const double lx = std::log2(fx), ly = std::log2(fy);
  return (std::max(lx, ly) - std::log2(fxy)) / (std::log2(n) - std::min(lx, ly));
}

double oracle_nwd_min(double fx, double fy, double fxy, double n) {
  if (fxy == 0) return kInfinity;
  const double lx = std::log2(fx), ly = std::log2(fy);
  return (std::min(lx, ly) - std::log2(fxy)) / (std::log2(n) - std::max(lx, ly));
}

FrequencySnapshot snap(std::uint64_t n, std::map<TermSet, std::uint64_t> entries) {
  return FrequencySnapshot(n, std::move(entries));
}

class NoTriples final : public FrequencyProvider {
 public:
  std::uint64_t count_set(const TermSet&) const override { return 1; }
  std::uint64_t total() const override { return 10; }
  std::string id() const override { return "no-triples"; }
  bool supports_triples() const override { return false; }
};

class CountingCompressor final : public Compressor {
 public:
  std::string name() const override { return "counting"; }
  std::optional<std::size_t> window() const override { return std::nullopt; }
  Granularity granularity() const override { return Granularity::bits; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override {
    ++calls;
    return inner.compressed_bits(data);
  }
  double identity_bound_bits(std::size_t n) const override { return inner.identity_bound_bits(n); }
  mutable std::atomic<std::size_t> calls{0};
  LzCompressor inner;
};

// Grid search for a three-candidate universe where nwd and nwd_min disagree on
// the best answer. Margins keep the flip clear of rounding.
std::string search_flip_snapshot() {
  const std::vector<std::uint64_t> grid = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000};
  const double n = 10000, margin = 0.02;
  for (auto fk : grid) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cands;
    for (auto f : grid)
      for (auto j : grid)
        if (j < std::min(f, fk)) cands.push_back({f, j});
    for (auto [fa, fka] : cands) {
      for (auto [fb, fkb] : cands) {
        const double a1 = oracle_nwd(fk, fa, fka, n), a2 = oracle_nwd_min(fk, fa, fka, n);
        const double b1 = oracle_nwd(fk, fb, fkb, n), b2 = oracle_nwd_min(fk, fb, fkb, n);
        if (!(a1 + margin < b1 && b2 + margin < a2)) continue;
        for (auto [fc, fkc] : cands) {
          const double c1 = oracle_nwd(fk, fc, fkc, n), c2 = oracle_nwd_min(fk, fc, fkc, n);
          if (c1 > std::max(a1, b1) + margin && c2 > std::max(a2, b2) + margin) {
            char buf[512];
            std::snprintf(buf, sizeof buf,
                          "NWD-SNAPSHOT v1\nN 10000\ncandidate-a\t%llu\ncandidate-a\tk\t%llu\n"
                          "candidate-b\t%llu\ncandidate-b\tk\t%llu\ncandidate-c\t%llu\n"
                          "candidate-c\tk\t%llu\nk\t%llu\n",
                          (unsigned long long)fa, (unsigned long long)fka, (unsigned long long)fb,
                          (unsigned long long)fkb, (unsigned long long)fc, (unsigned long long)fkc,
                          (unsigned long long)fk);
            return buf;
          }
        }
      }
    }
  }
  return {};
}

// Grid search for a person/answer universe where conditioning on a clue term
// flips the nwd_min choice from p-town to q-town.
std::string search_birthplace_snapshot() {
  const std::vector<std::uint64_t> grid = {10, 20, 50, 100, 200, 500};
  const double n = 10000, margin = 0.02;
  const std::uint64_t fk = 100, fp = 500, fq = 500, fc = 1000;
  for (auto fkp : grid)
    for (auto fkq : grid) {
      if (fkp > fk || fkq > fk) continue;
      if (!(oracle_nwd_min(fk, fp, fkp, n) + margin < oracle_nwd_min(fk, fq, fkq, n))) continue;
      for (auto fkc : grid)
        for (auto fpc : grid)
          for (auto fqc : grid) {
            if (fkc >= fc || fpc >= fc || fqc >= fc || fkc > fk || fpc > fp || fqc > fq) continue;
            for (auto fkpc : grid)
              for (auto fkqc : grid) {
                if (fkpc >= std::min({fkp, fkc, fpc}) || fkqc >= std::min({fkq, fkc, fqc})) continue;
                const double cp = oracle_nwd_min(fkc, fpc, fkpc, fc);
                const double cq = oracle_nwd_min(fkc, fqc, fkqc, fc);
                if (cq + margin < cp) {
                  auto u = [](std::uint64_t v) { return std::to_string(v); };
                  return "NWD-SNAPSHOT v1\nN 10000\nborn\t" + u(fc) + "\nborn\tp-town\t" + u(fpc) +
                         "\nborn\tp-town\tperson\t" + u(fkpc) + "\nborn\tperson\t" + u(fkc) +
                         "\nborn\tperson\tq-town\t" + u(fkqc) + "\nborn\tq-town\t" + u(fqc) +
                         "\np-town\t" + u(fp) + "\np-town\tperson\t" + u(fkp) + "\nperson\t" +
                         u(fk) + "\nperson\tq-town\t" + u(fkq) + "\nq-town\t" + u(fq) + "\n";
                }
              }
          }
    }
  return {};
}

}  // namespace

TEST(Ncd, MockNearIdentity) {
  MockPair m(1000, 1000, 1005);
  EXPECT_DOUBLE_EQ(ncd(m.z, m.x, m.y).value, 0.005);
  EXPECT_DOUBLE_EQ(ncd_unnormalized(m.z, m.x, m.y).value, 5.0);
}

TEST(Ncd, MockIndependence) {
  MockPair m(1000, 800, 1800);
  EXPECT_DOUBLE_EQ(ncd(m.z, m.x, m.y).value, 1.0);
  EXPECT_DOUBLE_EQ(ncd_unnormalized(m.z, m.x, m.y).value, 1000.0);
  const auto v = ncd(m.z, m.x, m.y);
  EXPECT_DOUBLE_EQ(v.numerator_bits, 1000.0);
  EXPECT_DOUBLE_EQ(v.denominator_bits, 1000.0);
  EXPECT_EQ(v.method, Method::ncd);
}

TEST(Ncd, JointLengthIsMeanOfBothOrders) {
  TableCompressor z;
  z.set("x", 1000);
  z.set("y", 1000);
  z.set("xy", 1500);
  z.set("yx", 1700);
  const auto x = DataItem::from_string("x", "x"), y = DataItem::from_string("y", "y");
  EXPECT_DOUBLE_EQ(ncd(z, x, y).value, 0.6);
  EXPECT_EQ(ncd(z, x, y).value, ncd(z, y, x).value);
}

TEST(Ncd, NumeratorClampedAtZero) {
  MockPair m(1000, 900, 800);
  EXPECT_EQ(ncd(m.z, m.x, m.y).value, 0.0);
  EXPECT_EQ(ncd_unnormalized(m.z, m.x, m.y).value, 0.0);
}

TEST(Ncd, BothEmptyIsDegenerate) {
  MockPair m(0, 0, 0);
  EXPECT_THROW(ncd(m.z, m.x, m.y), DegenerateInput);
  EXPECT_THROW(ncd_sum(m.z, m.x, m.y), DegenerateInput);
}

TEST(NcdSum, MockExamples) {
  EXPECT_DOUBLE_EQ(ncd_sum_from_lengths({1000, 1000, 1000}).value, 0.0);
  EXPECT_DOUBLE_EQ(ncd_sum_from_lengths({1000, 1000, 2000}).value, 1.0);
  EXPECT_DOUBLE_EQ(ncd_sum_from_lengths({1000, 1000, 1500}).value, 2.0 / 3.0);
  MockPair m(1000, 1000, 1500);
  EXPECT_DOUBLE_EQ(ncd_sum(m.z, m.x, m.y).value, 2.0 / 3.0);
}

TEST(NcdSum, ClampedIntoZeroTwo) {
  EXPECT_EQ(ncd_sum_from_lengths({1000, 1000, 900}).value, 0.0);
  EXPECT_LE(ncd_sum_from_lengths({1, 1, 1e9}).value, 2.0);
}

TEST(Ncd, SetUnionCompressorGivesMetricValues) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> w(256);
    for (auto& v : w) v = 1 + rng.index(500);
    SetUnionCompressor z(w);
    auto draw = [&](const char* label) {
      Bytes b(1 + rng.index(12));
      for (auto& c : b) c = static_cast<std::uint8_t>(rng.index(16));
      return DataItem{label, b, "gen"};
    };
    const auto x = draw("x"), y = draw("y"), u = draw("u");
    const double xy = ncd(z, x, y).value, yu = ncd(z, y, u).value, xu = ncd(z, x, u).value;
    ASSERT_GE(xy, 0.0);
    ASSERT_LE(xy, 1.0);
    ASSERT_EQ(xy, ncd(z, y, x).value);
    ASSERT_LE(xu, xy + yu + 1e-12);
    ASSERT_EQ(ncd(z, x, x).value, 0.0);
  }
}

TEST(Ncd, RealCodecsStayInRangeAndSymmetric) {
  const auto items = read_data_items(text_fixture_dir());
  for (const auto& name : available_compressors()) {
    const auto z = make_compressor(name);
    for (std::size_t i = 0; i + 1 < items.size(); i += 4) {
      const double a = ncd(*z, items[i], items[i + 1]).value;
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.2);
      EXPECT_EQ(a, ncd(*z, items[i + 1], items[i]).value) << name;
      const double s = ncd_sum(*z, items[i], items[i + 1]).value;
      EXPECT_LE(s, 1.2);
      EXPECT_EQ(s, ncd_sum(*z, items[i + 1], items[i]).value) << name;
    }
  }
}

TEST(Nwd, HorseRiderExample) {
  const auto s = example34();
  EXPECT_NEAR(nwd(s, "horse", "rider").value, 0.443, 0.001);
  EXPECT_NEAR(nwd_unnormalized(s, "horse", "rider").value, 4.15, 0.001);
  EXPECT_NEAR(nwd_min(s, "horse", "rider").value, 0.298, 0.002);
  EXPECT_NEAR(nwd(s, "horse", "rider").value,
              oracle_nwd(46700000, 12200000, 2630000, 8058044651.0), 1e-12);
  EXPECT_NEAR(nwd_min(s, "horse", "rider").value,
              oracle_nwd_min(46700000, 12200000, 2630000, 8058044651.0), 1e-12);
}

TEST(Nwd, SelfDistanceIsZero) {
  const auto s = example34();
  EXPECT_EQ(nwd(s, "horse", "horse").value, 0.0);
  EXPECT_EQ(nwd_min(s, "rider", "rider").value, 0.0);
  EXPECT_EQ(nwd_unnormalized(s, "horse", "horse").value, 0.0);
}

TEST(Nwd, TriangleConstructionViolatesTriangleInequality) {
  const auto s = FrequencySnapshot::load(data_dir() + "/triangle.snap");
  const double xy = nwd(s, "x", "y").value, xz = nwd(s, "x", "z").value, zy = nwd(s, "z", "y").value;
  EXPECT_TRUE(std::isinf(xy));
  EXPECT_EQ(xz, 0.0625);
  EXPECT_EQ(zy, 0.0625);
  EXPECT_GT(xy, xz + zy);
  EXPECT_TRUE(std::isinf(nwd_unnormalized(s, "x", "y").value));
}

TEST(Nwd, UnknownTermAndDegenerateCounts) {
  const auto s = snap(100, {{{"a"}, 10}, {{"b"}, 0}, {{"a", "b"}, 0}, {{"c"}, 100}, {{"a", "c"}, 10}});
  EXPECT_THROW(nwd(s, "a", "b"), UnknownTerm);
  EXPECT_THROW(nwd_min(s, "a", "c"), DegenerateDenominator);
  EXPECT_THROW(nwd(s, "a", "zzz"), MissingEntry);
}

TEST(Nwd, JointCountCappedAtSmallerFrequency) {
  PairCounts c{10, 20, 15, 1000};
  EXPECT_EQ(nwd_from_counts(c).value, nwd_from_counts({10, 20, 10, 1000}).value);
}

TEST(Nwd, BaseInvariance) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t n = 1000 + rng.index(1u << 30);
    const std::uint64_t fx = 1 + rng.index(n - 1), fy = 1 + rng.index(n - 1);
    const std::uint64_t fxy = 1 + rng.index(std::min(fx, fy));
    const PairCounts c{fx, fy, fxy, n};
    for (auto f : {nwd_from_counts, nwd_min_from_counts}) {
      const double b2 = f(c, 2.0).value;
      for (double base : {std::exp(1.0), 10.0}) {
        const double other = f(c, base).value;
        ASSERT_NEAR(other, b2, 1e-12 * std::max(1.0, std::abs(b2)));
      }
    }
  }
}

TEST(Nwd, NonIncreasingInJointCount) {
  Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t n = 100000;
    const std::uint64_t fx = 2 + rng.index(5000), fy = 2 + rng.index(5000);
    double prev = kInfinity, prev_min = kInfinity;
    for (std::uint64_t fxy = 0; fxy <= std::min(fx, fy); fxy += 1 + std::min(fx, fy) / 13) {
      const double v = nwd_from_counts({fx, fy, fxy, n}).value;
      const double m = nwd_min_from_counts({fx, fy, fxy, n}).value;
      ASSERT_LE(v, prev);
      ASSERT_LE(m, prev_min);
      ASSERT_GE(v, 0.0);
      ASSERT_GE(m, 0.0);
      prev = v;
      prev_min = m;
    }
  }
}

TEST(NwdMinConditional, UniversalConditionMatchesUnconditioned) {
  std::vector<Document> docs;
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    std::string text = "every";
    if (rng.index(3) == 0) text += " alpha";
    if (rng.index(4) == 0) text += " beta";
    if (rng.index(5) == 0) text += " alpha beta";
    docs.push_back({"d" + std::to_string(i), text});
  }
  const auto index = index_corpus(docs);
  EXPECT_DOUBLE_EQ(nwd_min_conditional(index, "alpha", "beta", "every").value,
                   nwd_min(index, "alpha", "beta").value);
}

TEST(NwdMinConditional, ZeroTripleGivesInfinity) {
  const auto s = snap(1000, {{{"c"}, 100}, {{"c", "x"}, 10}, {{"c", "y"}, 10}, {{"c", "x", "y"}, 0}});
  EXPECT_TRUE(std::isinf(nwd_min_conditional(s, "x", "y", "c").value));
}

TEST(NwdMinConditional, Errors) {
  const auto s = snap(1000, {{{"c"}, 0}, {{"x"}, 10}});
  EXPECT_THROW(nwd_min_conditional(s, "x", "y", "c"), UnknownTerm);
  EXPECT_THROW(nwd_min_conditional(NoTriples(), "x", "y", "c"), ConditionUnsupported);
}

TEST(FrozenSnapshots, FlipSnapshotIsTheGridSearchResult) {
  const std::string found = search_flip_snapshot();
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found, read_file(data_dir() + "/qa_flip.snap"));
}

TEST(FrozenSnapshots, FlipSnapshotSeparatesTheTwoDistances) {
  const auto s = FrequencySnapshot::load(data_dir() + "/qa_flip.snap");
  const double a = nwd(s, "k", "candidate-a").value, b = nwd(s, "k", "candidate-b").value,
               c = nwd(s, "k", "candidate-c").value;
  EXPECT_LT(a, b);
  EXPECT_LT(a, c);
  const double am = nwd_min(s, "k", "candidate-a").value, bm = nwd_min(s, "k", "candidate-b").value,
               cm = nwd_min(s, "k", "candidate-c").value;
  EXPECT_LT(bm, am);
  EXPECT_LT(bm, cm);
}

TEST(FrozenSnapshots, BirthplaceSnapshotIsTheGridSearchResult) {
  const std::string found = search_birthplace_snapshot();
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found, read_file(data_dir() + "/birthplace.snap"));
  const auto s = FrequencySnapshot::parse(found);
  EXPECT_LT(nwd_min(s, "person", "p-town").value, nwd_min(s, "person", "q-town").value);
  EXPECT_LT(nwd_min_conditional(s, "person", "q-town", "born").value,
            nwd_min_conditional(s, "person", "p-town", "born").value);
}

TEST(DistanceMatrix, IdenticalItemsGiveBoundedOffDiagonal) {
  const auto items = read_data_items(text_fixture_dir());
  DataItem a = items[0], b = items[0];
  b.label = "copy";
  LzCompressor lz;
  const auto m = distance_matrix({a, b}, Method::ncd, lz);
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_EQ(m(1, 1), 0.0);
  EXPECT_EQ(m(0, 1), m(1, 0));
  EXPECT_LE(m.cell(0, 1).numerator_bits, lz.identity_bound_bits(a.bytes.size()));
}

// No compression, and a declared tolerance of 8 bits for Z(xx) − Z(x).
class TightIdentityCompressor final : public Compressor {
 public:
  std::string name() const override { return "tight"; }
  std::optional<std::size_t> window() const override { return std::nullopt; }
  Granularity granularity() const override { return Granularity::bytes; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override { return 8 * data.size(); }
  double identity_bound_bits(std::size_t) const override { return 8.0; }
};

TEST(DistanceMatrix, DiagonalAboveIdentityBoundIsRejected) {
  TightIdentityCompressor z;
  std::vector<DataItem> items = {DataItem::from_string("a", "aaaa"), DataItem::from_string("b", "bbbb")};
  EXPECT_THROW(distance_matrix(items, Method::ncd, z), IdentityBoundExceeded);
}

TEST(DistanceMatrix, TriangleTermsKeepSentinelAndExport) {
  const auto s = FrequencySnapshot::load(data_dir() + "/triangle.snap");
  const auto m = distance_matrix(std::vector<std::string>{"w", "x", "y", "z"}, Method::nwd, s);
  EXPECT_TRUE(m.has_infinite());
  EXPECT_TRUE(std::isinf(m(1, 2)));
  const std::string csv = to_csv(m);
  EXPECT_NE(csv.find("inf"), std::string::npos);
  EXPECT_NE(to_phylip(m).find("inf"), std::string::npos);
  const auto doc = nlohmann::json::parse(to_json(m));
  EXPECT_EQ(doc["cells"][1][2], "inf");
  const auto back = parse_csv_matrix(csv);
  EXPECT_TRUE(std::isinf(back(2, 1)));
  EXPECT_EQ(back.labels(), m.labels());
}

TEST(DistanceMatrix, EachOrderedConcatenationComputedOnce) {
  std::vector<DataItem> items;
  Rng rng(51);
  for (int i = 0; i < 20; ++i) items.push_back({"item" + std::to_string(i), markov_dna(rng, 300, 0.7), "gen"});
  CountingCompressor z;
  const auto m = distance_matrix(items, Method::ncd, z);
  EXPECT_EQ(z.calls.load(), 20u + 400u);
  std::size_t off_diagonal = 0;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = i + 1; j < 20; ++j) {
      ++off_diagonal;
      EXPECT_EQ(m(i, j), m(j, i));
      EXPECT_GT(m(i, j), 0.0);
    }
  EXPECT_EQ(off_diagonal, 190u);
}

TEST(DistanceMatrix, LabelErrors) {
  LzCompressor lz;
  EXPECT_THROW(distance_matrix({DataItem::from_string("a", "x")}, Method::ncd, lz), TooFewItems);
  EXPECT_THROW(distance_matrix({DataItem::from_string("a", "x"), DataItem::from_string("a", "y")},
                               Method::ncd, lz),
               DuplicateLabel);
  const auto s = example34();
  EXPECT_THROW(distance_matrix(std::vector<std::string>{"horse", "rider"}, Method::ncd, s), DomainError);
}

TEST(DistanceMatrix, FailedCellNamesThePair) {
  const auto s = example34();
  try {
    distance_matrix(std::vector<std::string>{"horse", "rider", "saddle"}, Method::nwd, s);
    FAIL() << "expected MissingEntry";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "MissingEntry");
    EXPECT_EQ(e.labels().size(), 2u);
  }
}

TEST(MatrixIo, RoundTripsAllFormats) {
  const auto items = read_data_items(text_fixture_dir());
  const std::vector<DataItem> four(items.begin(), items.begin() + 4);
  const auto m = distance_matrix(four, Method::ncd, LzCompressor());
  for (const auto& back : {parse_csv_matrix(to_csv(m)), parse_json_matrix(to_json(m)),
                           parse_phylip_matrix(to_phylip(m))}) {
    ASSERT_EQ(back.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(back(i, j), m(i, j), 1e-5);
  }
  EXPECT_EQ(parse_json_matrix(to_json(m)).fingerprint().backend, "lz");
  EXPECT_EQ(to_csv(parse_csv_matrix(to_csv(m))), to_csv(m));
}

TEST(MatrixIo, RejectsMalformedInput) {
  EXPECT_THROW(parse_csv_matrix(",a,b\na,0,1\n"), MalformedMatrix);
  EXPECT_THROW(parse_csv_matrix(",a,b\na,0,x\nb,x,0\n"), MalformedMatrix);
  EXPECT_THROW(parse_csv_matrix(",a,b\na,0,1\nb,2,0\n"), MalformedMatrix);
  EXPECT_THROW(parse_json_matrix("{"), MalformedMatrix);
}

TEST(MatrixIo, FormatsSixSignificantDigits) {
  EXPECT_EQ(format_distance(0.443123456), "0.443123");
  EXPECT_EQ(format_distance(kInfinity), "inf");
  EXPECT_EQ(format_distance(0.0), "0");
}
