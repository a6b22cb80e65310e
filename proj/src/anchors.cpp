#include "infodist/anchors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "infodist/error.hpp"

namespace infodist {

namespace {

constexpr std::string_view kModelHeader = "NWD-SVM v1";

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw MalformedModel("bad number '" + s + "'");
  return v;
}

}  // namespace

AnchorVectorSet build_anchor_vectors(const std::vector<std::string>& words,
                                     const std::vector<std::string>& anchors,
                                     const std::vector<int>& labels, const TermDistance& dist) {
  if (anchors.empty()) throw EmptyAnchors("at least one anchor term is required");
  if (!labels.empty() && labels.size() != words.size()) {
    throw LabelMismatch(std::to_string(labels.size()) + " labels for " +
                        std::to_string(words.size()) + " words");
  }
  AnchorVectorSet avs{words, anchors, {}, labels};
  avs.vectors.reserve(words.size());
  for (const auto& w : words) {
    FeatureVector row;
    row.reserve(anchors.size());
    for (const auto& a : anchors) {
      const double v = w == a ? 0.0 : dist(w, a);
      if (!std::isfinite(v)) {
        throw InfiniteEntry("distance from '" + w + "' to anchor '" + a + "' is infinite", {w, a});
      }
      row.push_back(v);
    }
    avs.vectors.push_back(std::move(row));
  }
  return avs;
}

AnchorVectorSet build_anchor_vectors(const std::vector<std::string>& words,
                                     const std::vector<std::string>& anchors,
                                     const std::vector<int>& labels, const FrequencyProvider& p,
                                     Method method, double log_base) {
  TermDistance dist = [&](const std::string& x, const std::string& y) {
    switch (method) {
      case Method::nwd: return nwd(p, x, y, log_base).value;
      case Method::nwd_unnorm: return nwd_unnormalized(p, x, y, log_base).value;
      case Method::nwd_min: return nwd_min(p, x, y, log_base).value;
      default: throw ConditionUnsupported("anchor vectors need a web distance method");
    }
  };
  return build_anchor_vectors(words, anchors, labels, dist);
}

std::optional<std::string> dimension_warning(const AnchorVectorSet& avs) {
  if (avs.anchors.size() * 10 > avs.words.size()) {
    return std::to_string(avs.anchors.size()) + " anchors for " + std::to_string(avs.words.size()) +
           " training words exceeds one tenth of the training set";
  }
  return std::nullopt;
}

TrainedClassifier train_classifier(const AnchorVectorSet& avs, const std::string& fingerprint,
                                   std::size_t cv_folds, std::uint64_t seed) {
  if (avs.labels.size() != avs.words.size()) {
    throw DegenerateLabels("training requires one label per word");
  }
  const auto pos = std::count(avs.labels.begin(), avs.labels.end(), 1);
  const auto neg = std::count(avs.labels.begin(), avs.labels.end(), -1);
  if (pos + neg != static_cast<std::ptrdiff_t>(avs.labels.size())) {
    throw DegenerateLabels("labels must be +1 or -1");
  }
  if (pos < 3 || neg < 3) {
    throw DegenerateLabels("each class needs at least 3 examples (have " + std::to_string(pos) +
                           " positive, " + std::to_string(neg) + " negative)");
  }
  const GridChoice g = select_hyperparameters(avs.vectors, avs.labels, cv_folds, seed);
  TrainedClassifier c;
  c.model = train_svm(avs.vectors, avs.labels, g.gamma, g.cost);
  c.anchors = avs.anchors;
  c.fingerprint = fingerprint;
  c.seed = seed;
  c.cv_accuracy = g.cv_accuracy;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < avs.vectors.size(); ++i) {
    if (c.model.predict(avs.vectors[i]) == avs.labels[i]) ++correct;
  }
  c.training_accuracy = static_cast<double>(correct) / static_cast<double>(avs.vectors.size());
  return c;
}

std::vector<int> classify(const TrainedClassifier& c, const AnchorVectorSet& avs,
                          const std::string& fingerprint) {
  if (fingerprint != c.fingerprint) {
    throw FingerprintMismatch("model was trained on '" + c.fingerprint + "', vectors come from '" +
                              fingerprint + "'");
  }
  if (avs.anchors != c.anchors) throw FingerprintMismatch("anchor terms differ from training");
  std::vector<int> out;
  out.reserve(avs.vectors.size());
  for (const auto& v : avs.vectors) out.push_back(c.model.predict(v));
  return out;
}

std::string save_model(const TrainedClassifier& c) {
  std::ostringstream out;
  out << kModelHeader << "\n";
  out << "fingerprint " << c.fingerprint << "\n";
  out << "seed " << c.seed << "\n";
  out << "cv_accuracy " << hex_double(c.cv_accuracy) << "\n";
  out << "training_accuracy " << hex_double(c.training_accuracy) << "\n";
  out << "anchors " << c.anchors.size() << "\n";
  for (const auto& a : c.anchors) out << a << "\n";
  out << "gamma " << hex_double(c.model.gamma) << "\n";
  out << "cost " << hex_double(c.model.cost) << "\n";
  out << "rho " << hex_double(c.model.rho) << "\n";
  out << "constant " << (c.model.constant_label ? std::to_string(*c.model.constant_label) : "none")
      << "\n";
  out << "support " << c.model.support.size() << "\n";
  for (std::size_t i = 0; i < c.model.support.size(); ++i) {
    out << hex_double(c.model.coef[i]);
    for (double v : c.model.support[i]) out << " " << hex_double(v);
    out << "\n";
  }
  return out.str();
}

TrainedClassifier load_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line)) throw MalformedModel("model text ends early");
    return line;
  };
  auto field = [&](const std::string& key) -> std::string {
    const std::string l = next();
    if (l.rfind(key + " ", 0) != 0) throw MalformedModel("expected '" + key + "', got '" + l + "'");
    return l.substr(key.size() + 1);
  };
  if (next() != kModelHeader) throw MalformedModel("not an NWD-SVM v1 model");
  TrainedClassifier c;
  try {
    c.fingerprint = field("fingerprint");
    c.seed = std::stoull(field("seed"));
    c.cv_accuracy = parse_double(field("cv_accuracy"));
    c.training_accuracy = parse_double(field("training_accuracy"));
    const std::size_t k = std::stoul(field("anchors"));
    for (std::size_t i = 0; i < k; ++i) c.anchors.push_back(next());
    c.model.gamma = parse_double(field("gamma"));
    c.model.cost = parse_double(field("cost"));
    c.model.rho = parse_double(field("rho"));
    const std::string constant = field("constant");
    if (constant != "none") c.model.constant_label = std::stoi(constant);
    const std::size_t m = std::stoul(field("support"));
    for (std::size_t i = 0; i < m; ++i) {
      std::istringstream row(next());
      std::string tok;
      if (!(row >> tok)) throw MalformedModel("empty support row");
      c.model.coef.push_back(parse_double(tok));
      FeatureVector v;
      while (row >> tok) v.push_back(parse_double(tok));
      if (v.size() != k) throw MalformedModel("support vector has wrong dimension");
      c.model.support.push_back(std::move(v));
    }
  } catch (const std::logic_error& e) {
    throw MalformedModel(std::string("bad model field: ") + e.what());
  }
  return c;
}

}  // namespace infodist
