#include "infodist/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "infodist/error.hpp"
#include "infodist/parallel.hpp"
#include "infodist/random.hpp"

namespace infodist {
namespace {

double log2n(double n_bits) { return std::log2(std::max(2.0, n_bits)); }

double bits_of(const DataItem& x) { return 8.0 * static_cast<double>(x.bytes.size()); }

void observe(AxiomRow& row, double deviation, double n_bits,
             std::vector<std::string> labels) {
  ++row.samples;
  const double per = deviation / log2n(n_bits);
  if (row.samples == 1 || deviation > row.worst_bits) {
    row.worst_bits = deviation;
    row.labels = labels;
  }
  if (row.samples == 1 || per > row.worst_per_logn) {
    row.worst_per_logn = per;
    row.labels_per_logn = std::move(labels);
  }
}

}  // namespace

const AxiomRow& AxiomReport::row(std::string_view axiom) const {
  for (const auto& r : rows) {
    if (r.axiom == axiom) return r;
  }
  throw std::out_of_range("no axiom row '" + std::string(axiom) + "'");
}

AxiomReport normality_audit(const Compressor& z, const std::vector<DataItem>& corpus,
                            const AuditOptions& options) {
  const std::size_t n = corpus.size();
  if (n < 3) {
    throw CorpusTooSmall("normality audit needs at least 3 items, got " + std::to_string(n));
  }

  AxiomReport report;
  report.compressor = z.name();
  report.seed = options.seed;
  report.empty_bits = static_cast<double>(z.compressed_bits({}));

  std::vector<double> single(n), doubled(n);
  parallel_for(n, [&](std::size_t i) {
    single[i] = static_cast<double>(compressed_length(z, corpus[i]));
    doubled[i] = static_cast<double>(concat_length(z, corpus[i], corpus[i]));
  });
  // joint[i*n+j] = Z(x_i x_j), i != j
  std::vector<double> joint(n * n, 0.0);
  parallel_for(n * n, [&](std::size_t k) {
    const std::size_t i = k / n, j = k % n;
    if (i != j) joint[k] = static_cast<double>(concat_length(z, corpus[i], corpus[j]));
  });
  auto zxy = [&](std::size_t i, std::size_t j) { return joint[i * n + j]; };

  AxiomRow identity, monotone, symmetry, distributive;
  identity.axiom = "identity";
  monotone.axiom = "monotonicity";
  symmetry.axiom = "symmetry";
  distributive.axiom = "distributivity";

  for (std::size_t i = 0; i < n; ++i) {
    observe(identity, std::abs(doubled[i] - single[i]), 2 * bits_of(corpus[i]),
            {corpus[i].label});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double nb = bits_of(corpus[i]) + bits_of(corpus[j]);
      observe(monotone, std::max(0.0, single[i] - zxy(i, j)), nb,
              {corpus[i].label, corpus[j].label});
      if (i < j) {
        observe(symmetry, std::abs(zxy(i, j) - zxy(j, i)), nb,
                {corpus[i].label, corpus[j].label});
      }
    }
  }

  auto check_triple = [&](std::size_t x, std::size_t y, std::size_t w) {
    const double dev = std::max(0.0, zxy(x, y) + single[w] - zxy(x, w) - zxy(y, w));
    const double nb = std::max({bits_of(corpus[x]) + bits_of(corpus[y]),
                                bits_of(corpus[x]) + bits_of(corpus[w]),
                                bits_of(corpus[y]) + bits_of(corpus[w])});
    observe(distributive, dev, nb, {corpus[x].label, corpus[y].label, corpus[w].label});
  };
  const std::size_t ordered_triples = n * (n - 1) * (n - 2);
  if (ordered_triples <= options.max_triples) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t w = 0; w < n; ++w)
          if (x != y && x != w && y != w) check_triple(x, y, w);
  } else {
    Rng rng(options.seed);
    for (std::size_t s = 0; s < options.max_triples; ++s) {
      std::size_t x = rng.index(n), y, w;
      do y = rng.index(n); while (y == x);
      do w = rng.index(n); while (w == x || w == y);
      check_triple(x, y, w);
    }
  }

  report.rows = {identity, monotone, symmetry, distributive};
  return report;
}

ExpansionReport expansion_audit(const Compressor& z, const std::vector<DataItem>& corpus,
                                double ceiling_bits) {
  ExpansionReport report;
  report.compressor = z.name();
  report.ceiling_bits = ceiling_bits;
  std::vector<double> constants(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const double len_bits = bits_of(corpus[i]);
    const double allowance = len_bits + (len_bits >= 1.0 ? 2.0 * std::log2(len_bits) : 0.0);
    constants[i] = static_cast<double>(compressed_length(z, corpus[i])) - allowance;
  });
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (i == 0 || constants[i] > report.worst_constant_bits) {
      report.worst_constant_bits = constants[i];
      report.worst_label = corpus[i].label;
    }
  }
  report.passed = report.worst_constant_bits <= ceiling_bits;
  return report;
}

std::string to_text(const AxiomReport& report) {
  std::ostringstream out;
  out << "# compressor=" << report.compressor << " seed=" << report.seed
      << " empty_bits=" << report.empty_bits << "\n";
  char line[512];
  std::snprintf(line, sizeof line, "%-16s %14s %14s %8s  %s\n", "axiom", "worst_bits",
                "worst_per_logn", "samples", "labels");
  out << line;
  for (const auto& r : report.rows) {
    std::string labels;
    for (const auto& l : r.labels) labels += (labels.empty() ? "" : ",") + l;
    std::snprintf(line, sizeof line, "%-16s %14.6g %14.6g %8zu  %s\n", r.axiom.c_str(),
                  r.worst_bits, r.worst_per_logn, r.samples, labels.c_str());
    out << line;
  }
  return out.str();
}

std::string to_json(const AxiomReport& report, const ExpansionReport* expansion) {
  nlohmann::ordered_json doc;
  doc["compressor"] = report.compressor;
  doc["seed"] = report.seed;
  doc["empty_bits"] = report.empty_bits;
  auto& rows = doc["axioms"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"axiom", r.axiom},
                    {"worst_bits", r.worst_bits},
                    {"worst_per_logn", r.worst_per_logn},
                    {"labels", r.labels},
                    {"labels_per_logn", r.labels_per_logn},
                    {"samples", r.samples}});
  }
  if (expansion != nullptr) {
    doc["expansion"] = {{"worst_constant_bits", expansion->worst_constant_bits},
                        {"label", expansion->worst_label},
                        {"ceiling_bits", expansion->ceiling_bits},
                        {"passed", expansion->passed}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace infodist
