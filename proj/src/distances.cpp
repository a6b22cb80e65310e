#include "infodist/distances.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "infodist/error.hpp"
#include "infodist/parallel.hpp"

namespace infodist {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ncd: return "ncd";
    case Method::ncd_unnorm: return "ncd_unnorm";
    case Method::ncd_sum: return "ncd_sum";
    case Method::nwd: return "nwd";
    case Method::nwd_unnorm: return "nwd_unnorm";
    case Method::nwd_min: return "nwd_min";
    case Method::nwd_min_cond: return "nwd_min_cond";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (Method m : {Method::ncd, Method::ncd_unnorm, Method::ncd_sum, Method::nwd,
                   Method::nwd_unnorm, Method::nwd_min, Method::nwd_min_cond}) {
    if (to_string(m) == key) return m;
  }
  throw DomainError("unknown distance method '" + std::string(name) + "'");
}

bool is_compression_method(Method m) {
  return m == Method::ncd || m == Method::ncd_unnorm || m == Method::ncd_sum;
}

// ---- compression family ----------------------------------------------------

CompressionLengths measure(const Compressor& z, const DataItem& x, const DataItem& y) {
  CompressionLengths l;
  l.x = static_cast<double>(compressed_length(z, x));
  l.y = static_cast<double>(compressed_length(z, y));
  const auto xy = static_cast<double>(concat_length(z, x, y));
  const auto yx = static_cast<double>(concat_length(z, y, x));
  l.joint = 0.5 * (xy + yx);
  return l;
}

DistanceValue ncd_from_lengths(const CompressionLengths& l) {
  const double hi = std::max(l.x, l.y);
  const double lo = std::min(l.x, l.y);
  if (hi <= 0.0) throw DegenerateInput("both items compress to 0 bits");
  const double num = std::max(0.0, l.joint - lo);
  return {num / hi, num, hi, Method::ncd};
}

DistanceValue ncd_unnormalized_from_lengths(const CompressionLengths& l) {
  const double num = std::max(0.0, l.joint - std::min(l.x, l.y));
  return {num, num, 1.0, Method::ncd_unnorm};
}

DistanceValue ncd_sum_from_lengths(const CompressionLengths& l) {
  if (l.joint <= 0.0) throw DegenerateInput("concatenation compresses to 0 bits");
  const double num = std::max(0.0, 2.0 * l.joint - l.x - l.y);
  return {std::clamp(num / l.joint, 0.0, 2.0), num, l.joint, Method::ncd_sum};
}

DistanceValue ncd(const Compressor& z, const DataItem& x, const DataItem& y) {
  return ncd_from_lengths(measure(z, x, y));
}

DistanceValue ncd_unnormalized(const Compressor& z, const DataItem& x, const DataItem& y) {
  return ncd_unnormalized_from_lengths(measure(z, x, y));
}

DistanceValue ncd_sum(const Compressor& z, const DataItem& x, const DataItem& y) {
  return ncd_sum_from_lengths(measure(z, x, y));
}

// ---- web family --------------------------------------------------------------

namespace {

double log_in(double v, double base) { return std::log(v) / std::log(base); }

// ln(hi / lo) for integer counts hi ≥ lo > 0, accurate when the ratio is close to 1.
double ln_ratio(std::uint64_t hi, std::uint64_t lo) {
  return std::log1p(static_cast<double>(hi - lo) / static_cast<double>(lo));
}

void check_base(double base) {
  if (!(base > 0.0) || base == 1.0 || !std::isfinite(base)) {
    throw DomainError("invalid logarithm base " + std::to_string(base));
  }
}

// Validates counts and returns f(x,y) capped at min{f(x), f(y)}.
std::uint64_t checked_joint(const PairCounts& c) {
  if (c.fx == 0 || c.fy == 0) throw UnknownTerm("term with zero frequency");
  if (c.fx > c.n || c.fy > c.n || c.fxy > c.n) {
    throw ProviderFailure("count exceeds N = " + std::to_string(c.n));
  }
  return std::min({c.fxy, c.fx, c.fy});
}

}  // namespace

// The normalized forms take their ratio from natural logs, so the value does
// not depend on the base; only the reported numerator and denominator do.
DistanceValue nwd_from_counts(const PairCounts& c, double base) {
  check_base(base);
  const std::uint64_t fxy = checked_joint(c);
  const double scale = std::log(base);
  const double den_ln = ln_ratio(c.n, std::min(c.fx, c.fy));
  if (!(den_ln > 0.0)) throw DegenerateDenominator("log N equals min log f");
  if (fxy == 0) return {kInfinity, kInfinity, den_ln / scale, Method::nwd};
  const double num_ln = ln_ratio(std::max(c.fx, c.fy), fxy);
  return {num_ln / den_ln, num_ln / scale, den_ln / scale, Method::nwd};
}

DistanceValue nwd_unnormalized_from_counts(const PairCounts& c, double base) {
  check_base(base);
  const std::uint64_t fxy = checked_joint(c);
  if (fxy == 0) return {kInfinity, kInfinity, 1.0, Method::nwd_unnorm};
  const double hi = log_in(static_cast<double>(std::max(c.fx, c.fy)), base);
  const double num = std::max(0.0, hi - log_in(static_cast<double>(fxy), base));
  return {num, num, 1.0, Method::nwd_unnorm};
}

DistanceValue nwd_min_from_counts(const PairCounts& c, double base) {
  check_base(base);
  const std::uint64_t fxy = checked_joint(c);
  const double scale = std::log(base);
  const double den_ln = ln_ratio(c.n, std::max(c.fx, c.fy));
  if (!(den_ln > 0.0)) throw DegenerateDenominator("log N equals max log f");
  if (fxy == 0) return {kInfinity, kInfinity, den_ln / scale, Method::nwd_min};
  const double num_ln = ln_ratio(std::min(c.fx, c.fy), fxy);
  return {num_ln / den_ln, num_ln / scale, den_ln / scale, Method::nwd_min};
}

PairCounts pair_counts(const FrequencyProvider& p, const std::string& x, const std::string& y) {
  PairCounts c;
  c.n = p.total();
  c.fx = p.count({x});
  if (c.fx == 0) throw UnknownTerm("term '" + x + "' has zero frequency", {x});
  c.fy = p.count({y});
  if (c.fy == 0) throw UnknownTerm("term '" + y + "' has zero frequency", {y});
  c.fxy = p.count({x, y});
  if (c.fx > c.n || c.fy > c.n || c.fxy > c.n) {
    throw ProviderFailure("provider " + p.id() + " returned a count above N", {x, y});
  }
  return c;
}

DistanceValue nwd(const FrequencyProvider& p, const std::string& x, const std::string& y,
                  double base) {
  return nwd_from_counts(pair_counts(p, x, y), base);
}

DistanceValue nwd_unnormalized(const FrequencyProvider& p, const std::string& x,
                               const std::string& y, double base) {
  return nwd_unnormalized_from_counts(pair_counts(p, x, y), base);
}

DistanceValue nwd_min(const FrequencyProvider& p, const std::string& x, const std::string& y,
                      double base) {
  return nwd_min_from_counts(pair_counts(p, x, y), base);
}

DistanceValue nwd_min_conditional(const FrequencyProvider& p, const std::string& x,
                                  const std::string& y, const std::string& condition,
                                  double base) {
  if (!p.supports_triples()) {
    throw ConditionUnsupported("provider " + p.id() + " cannot count three-term conjunctions",
                               {x, y, condition});
  }
  PairCounts c;
  c.n = p.count({condition});
  if (c.n == 0) {
    throw UnknownTerm("condition '" + condition + "' has zero frequency", {condition});
  }
  c.fx = p.count({x, condition});
  if (c.fx == 0) throw UnknownTerm("term '" + x + "' never occurs with the condition", {x, condition});
  c.fy = p.count({y, condition});
  if (c.fy == 0) throw UnknownTerm("term '" + y + "' never occurs with the condition", {y, condition});
  c.fxy = p.count({x, y, condition});
  DistanceValue v = nwd_min_from_counts(c, base);
  v.method = Method::nwd_min_cond;
  return v;
}

// ---- matrices ------------------------------------------------------------------

std::string format_distance(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string Fingerprint::to_string() const {
  std::string s = "method=" + method + " backend=" + backend + " base=" +
                  format_distance(log_base) + " seed=" +
                  (seed ? std::to_string(*seed) : std::string("-")) +
                  " version=" + tool_version;
  return s;
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, Method method,
                               Fingerprint fingerprint)
    : labels_(std::move(labels)),
      cells_(labels_.size() * labels_.size(), DistanceValue{0.0, 0.0, 1.0, method}),
      method_(method),
      fingerprint_(std::move(fingerprint)) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, const DistanceValue& v) {
  cells_[i * size() + j] = v;
  cells_[j * size() + i] = v;
}

bool DistanceMatrix::has_infinite() const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [](const DistanceValue& v) { return v.is_infinite(); });
}

namespace {

void check_labels(const std::vector<std::string>& labels) {
  if (labels.size() < 2) {
    throw TooFewItems("a distance matrix needs at least 2 items, got " +
                      std::to_string(labels.size()));
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw DuplicateLabel("label '" + l + "' is not unique", {l});
  }
}

[[noreturn]] void rethrow_for_cell(const Error& e, const std::string& a, const std::string& b) {
  throw Error(e.kind(), "cell (" + a + ", " + b + "): " + e.what(), {a, b});
}

}  // namespace

DistanceMatrix distance_matrix(const std::vector<DataItem>& items, Method method,
                               const Compressor& z) {
  if (!is_compression_method(method)) {
    throw DomainError("method " + std::string(to_string(method)) + " needs a frequency provider");
  }
  std::vector<std::string> labels;
  for (const auto& it : items) labels.push_back(it.label);
  check_labels(labels);
  const std::size_t n = items.size();

  std::vector<double> single(n);
  std::vector<double> joint(n * n);  // raw Z(x_i x_j), diagonal = Z(x_i x_i)
  parallel_for(n, [&](std::size_t i) {
    single[i] = static_cast<double>(compressed_length(z, items[i]));
  });
  parallel_for(n * n, [&](std::size_t k) {
    joint[k] = static_cast<double>(concat_length(z, items[k / n], items[k % n]));
  });

  auto evaluate = [&](const CompressionLengths& l) {
    switch (method) {
      case Method::ncd: return ncd_from_lengths(l);
      case Method::ncd_unnorm: return ncd_unnormalized_from_lengths(l);
      default: return ncd_sum_from_lengths(l);
    }
  };

  DistanceMatrix m(labels, method, Fingerprint{std::string(to_string(method)), z.name(), 2.0,
                                               std::string(kToolVersion), std::nullopt});
  for (std::size_t i = 0; i < n; ++i) {
    const double excess = joint[i * n + i] - single[i];
    const double bound = z.identity_bound_bits(items[i].bytes.size());
    try {
      evaluate({single[i], single[i], joint[i * n + i]});
    } catch (const Error& e) {
      rethrow_for_cell(e, labels[i], labels[i]);
    }
    if (excess > bound) {
      throw IdentityBoundExceeded("Z(xx) - Z(x) = " + format_distance(excess) +
                                      " bits exceeds the " + z.name() + " identity bound " +
                                      format_distance(bound) + " for '" + labels[i] + "'",
                                  {labels[i]});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      try {
        m.set(i, j, evaluate({single[i], single[j],
                              0.5 * (joint[i * n + j] + joint[j * n + i])}));
      } catch (const Error& e) {
        rethrow_for_cell(e, labels[i], labels[j]);
      }
    }
  }
  return m;
}

DistanceMatrix distance_matrix(const std::vector<std::string>& terms, Method method,
                               const FrequencyProvider& p, double log_base) {
  if (method != Method::nwd && method != Method::nwd_unnorm && method != Method::nwd_min) {
    throw DomainError("method " + std::string(to_string(method)) +
                      " is not a pairwise web distance");
  }
  check_labels(terms);
  const std::size_t n = terms.size();
  auto evaluate = [&](const std::string& a, const std::string& b) {
    switch (method) {
      case Method::nwd: return nwd(p, a, b, log_base);
      case Method::nwd_unnorm: return nwd_unnormalized(p, a, b, log_base);
      default: return nwd_min(p, a, b, log_base);
    }
  };
  DistanceMatrix m(terms, method, Fingerprint{std::string(to_string(method)), p.id(), log_base,
                                              std::string(kToolVersion), std::nullopt});
  std::vector<DistanceValue> cells(n * n);
  parallel_for(n * n, [&](std::size_t k) {
    const std::size_t i = k / n, j = k % n;
    if (j < i) return;
    try {
      cells[k] = evaluate(terms[i], terms[j]);
    } catch (const Error& e) {
      rethrow_for_cell(e, terms[i], terms[j]);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, cells[i * n + j]);
  }
  return m;
}

}  // namespace infodist
