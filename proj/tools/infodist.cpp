// infodist: command-line front end for the distance toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infodist/anchors.hpp"
#include "infodist/audit.hpp"
#include "infodist/compressors.hpp"
#include "infodist/distances.hpp"
#include "infodist/error.hpp"
#include "infodist/frequency.hpp"
#include "infodist/plagiarism.hpp"
#include "infodist/qa.hpp"
#include "infodist/quartet.hpp"
#include "infodist/remote_provider.hpp"
#include "infodist/snapshot.hpp"
#include "infodist/tokenizer.hpp"
#include "infodist/translation.hpp"

using namespace infodist;

namespace {

struct ProviderOptions {
  std::string corpus;
  std::string snapshot;
  std::string remote;
  std::string record;
  std::string replay;

  void attach(CLI::App* cmd) {
    auto* g = cmd->add_option_group("provider", "frequency source (exactly one)");
    g->add_option("--corpus", corpus, "directory of text documents to index");
    g->add_option("--snapshot", snapshot, "frequency snapshot file");
    g->add_option("--remote", remote, "http://host:port of a count server");
    g->add_option("--replay", replay, "replay log recorded from a count server");
    g->require_option(1);
    cmd->add_option("--record", record, "write the replay log of a --remote session here");
  }

  bool live() const { return !remote.empty(); }

  std::shared_ptr<CachingProvider> open() const {
    ProviderHandle backend;
    if (!corpus.empty()) {
      backend = std::make_shared<CorpusIndex>(CorpusIndex::build(read_corpus_dir(corpus)));
    } else if (!snapshot.empty()) {
      backend = std::make_shared<FrequencySnapshot>(FrequencySnapshot::load(snapshot));
    } else if (!remote.empty()) {
      backend = RemoteProvider::connect(remote, record.empty() ? std::nullopt
                                                               : std::optional<std::string>(record));
    } else {
      backend = RemoteProvider::replay(replay);
    }
    return std::make_shared<CachingProvider>(backend);
  }
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DegenerateInput("cannot read '" + path + "'", {path});
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) out.push_back(field);
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DegenerateInput("cannot write '" + path + "'", {path});
  out << text;
}

std::string fixed(double v, int precision) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string pair_output(const DistanceValue& v, const Fingerprint& fp, int precision, bool json) {
  if (!json) return fixed(v.value, precision) + "\n";
  nlohmann::ordered_json doc;
  doc["method"] = std::string(to_string(v.method));
  if (v.is_infinite()) doc["value"] = "inf";
  else doc["value"] = v.value;
  doc["numerator_bits"] = v.numerator_bits;
  doc["denominator_bits"] = v.denominator_bits;
  doc["fingerprint"] = fp.to_string();
  return doc.dump(2) + "\n";
}

DataItem load_item(const std::string& arg, bool literal) {
  if (literal) return DataItem::from_string(arg, arg, "argument");
  return read_data_item(arg);
}

int run(int argc, char** argv) {
  CLI::App app{"Compression and co-occurrence information distances", "infodist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // ---- ncd / ncd-sum / plag -----------------------------------------------------
  struct PairCompressionArgs {
    std::string a, b, compressor = "lz";
    bool literal = false, json = false;
    int precision = 3;
  };
  PairCompressionArgs ncd_args, sum_args, plag_args;
  auto add_pair_compression = [&](const char* name, const char* help, PairCompressionArgs& a) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("x", a.a, "first file")->required();
    cmd->add_option("y", a.b, "second file")->required();
    cmd->add_option("--compressor", a.compressor, "lz, gzip, bzip2 or xz")->capture_default_str();
    cmd->add_flag("--literal", a.literal, "treat x and y as text rather than file paths");
    cmd->add_option("--precision", a.precision, "decimals printed")->capture_default_str();
    cmd->add_flag("--json", a.json, "JSON output with fingerprint");
    return cmd;
  };
  auto* ncd_cmd = add_pair_compression("ncd", "normalized compression distance of two files", ncd_args);
  auto* sum_cmd = add_pair_compression("ncd-sum", "sum distance of two files", sum_args);
  auto* plag_cmd = add_pair_compression("plag", "plagiarism score of two source files", plag_args);

  // ---- nwd / nwd-min ----------------------------------------------------------
  struct PairWebArgs {
    std::string x, y, given;
    double base = 2.0;
    bool json = false;
    int precision = 3;
    ProviderOptions provider;
  };
  PairWebArgs nwd_args, min_args;
  auto add_pair_web = [&](const char* name, const char* help, PairWebArgs& a) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("x", a.x, "first term")->required();
    cmd->add_option("y", a.y, "second term")->required();
    cmd->add_option("--base", a.base, "logarithm base")->capture_default_str();
    cmd->add_option("--precision", a.precision, "decimals printed")->capture_default_str();
    cmd->add_flag("--json", a.json, "JSON output with fingerprint");
    a.provider.attach(cmd);
    return cmd;
  };
  auto* nwd_cmd = add_pair_web("nwd", "normalized web distance of two terms", nwd_args);
  auto* min_cmd = add_pair_web("nwd-min", "min distance of two terms", min_args);
  min_cmd->add_option("--given", min_args.given, "condition term");

  // ---- matrix -----------------------------------------------------------------
  struct {
    std::string method = "ncd", compressor = "lz", dir, terms, format = "csv", out;
    double base = 2.0;
    ProviderOptions provider;
  } mx;
  auto* matrix_cmd = app.add_subcommand("matrix", "pairwise distance matrix");
  matrix_cmd->add_option("--method", mx.method, "ncd, ncd-unnorm, ncd-sum, nwd, nwd-unnorm, nwd-min")
      ->capture_default_str();
  matrix_cmd->add_option("--compressor", mx.compressor, "compressor for ncd methods")
      ->capture_default_str();
  matrix_cmd->add_option("dir", mx.dir, "directory of files (compression methods)");
  matrix_cmd->add_option("--terms", mx.terms, "file with one term per line (web methods)");
  matrix_cmd->add_option("--format", mx.format, "csv, phylip or json")
      ->check(CLI::IsMember({"csv", "phylip", "json"}))
      ->capture_default_str();
  matrix_cmd->add_option("--base", mx.base, "logarithm base")->capture_default_str();
  matrix_cmd->add_option("-o,--output", mx.out, "output file (default stdout)");
  {
    auto* g = matrix_cmd->add_option_group("provider", "frequency source for web methods");
    g->add_option("--corpus", mx.provider.corpus, "directory of text documents to index");
    g->add_option("--snapshot", mx.provider.snapshot, "frequency snapshot file");
    g->add_option("--remote", mx.provider.remote, "http://host:port of a count server");
    g->add_option("--replay", mx.provider.replay, "replay log");
    g->require_option(0, 1);
    matrix_cmd->add_option("--record", mx.provider.record, "replay log path for --remote");
  }

  // ---- tree -------------------------------------------------------------------
  struct {
    std::string matrix, format = "newick", out, trace;
    std::size_t restarts = 10, patience = 1000;
    std::uint64_t seed = 0;
  } tr;
  auto* tree_cmd = app.add_subcommand("tree", "quartet-method tree from a distance matrix");
  tree_cmd->add_option("--matrix", tr.matrix, "CSV, JSON or PHYLIP matrix")->required();
  tree_cmd->add_option("--seed", tr.seed, "random seed")->capture_default_str();
  tree_cmd->add_option("--restarts", tr.restarts, "hill-climb restarts")->capture_default_str();
  tree_cmd->add_option("--patience", tr.patience, "rejections before a restart stops")
      ->capture_default_str();
  tree_cmd->add_option("--format", tr.format, "newick or dot")
      ->check(CLI::IsMember({"newick", "dot"}))
      ->capture_default_str();
  tree_cmd->add_option("--trace", tr.trace, "write the (step, restart, s) trace CSV here");
  tree_cmd->add_option("-o,--output", tr.out, "output file (default stdout)");

  // ---- index / snapshot ------------------------------------------------------------
  struct {
    std::string dir, terms, out;
    std::size_t arity = 2;
  } ix;
  auto* index_cmd = app.add_subcommand("index", "index a corpus into a closed-world snapshot");
  index_cmd->add_option("dir", ix.dir, "directory of text documents")->required();
  index_cmd->add_option("--terms", ix.terms,
                        "terms to record (default: every token, singletons only)");
  index_cmd->add_option("--arity", ix.arity, "largest tuple size recorded for --terms (1-3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  index_cmd->add_option("-o,--output", ix.out, "snapshot file (default stdout)");

  struct {
    std::string terms, out;
    std::size_t arity = 2;
    ProviderOptions provider;
  } sn;
  auto* snapshot_cmd = app.add_subcommand("snapshot", "freeze provider counts for a term list");
  snapshot_cmd->add_option("--terms", sn.terms, "file with one term per line")->required();
  snapshot_cmd->add_option("--arity", sn.arity, "largest tuple size recorded (1-3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  snapshot_cmd->add_option("-o,--output", sn.out, "snapshot file (default stdout)");
  sn.provider.attach(snapshot_cmd);

  // ---- audit ----------------------------------------------------------------------
  struct {
    std::string dir, compressor = "lz";
    std::uint64_t seed = 0;
    bool json = false;
  } au;
  auto* audit_cmd = app.add_subcommand("audit", "normal-compressor axiom audit over a corpus");
  audit_cmd->add_option("dir", au.dir, "directory of files")->required();
  audit_cmd->add_option("--compressor", au.compressor, "compressor")->capture_default_str();
  audit_cmd->add_option("--seed", au.seed, "seed for triple subsampling")->capture_default_str();
  audit_cmd->add_flag("--json", au.json, "JSON report");

  // ---- classify ---------------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "anchor-vector classification");
  classify_cmd->require_subcommand(1);
  struct {
    std::string words, anchors, out, method = "nwd";
    std::size_t folds = 5;
    std::uint64_t seed = 0;
    double base = 2.0;
    ProviderOptions provider;
  } ct;
  auto* train_cmd = classify_cmd->add_subcommand("train", "train on labelled words");
  train_cmd->add_option("--words", ct.words, "lines of <word>\\t<+1|-1>")->required();
  train_cmd->add_option("--anchors", ct.anchors, "file with one anchor term per line")->required();
  train_cmd->add_option("--folds", ct.folds, "cross-validation folds")->capture_default_str();
  train_cmd->add_option("--seed", ct.seed, "fold shuffling seed")->capture_default_str();
  train_cmd->add_option("--method", ct.method, "nwd, nwd-unnorm or nwd-min")->capture_default_str();
  train_cmd->add_option("--base", ct.base, "logarithm base")->capture_default_str();
  train_cmd->add_option("-o,--output", ct.out, "model file (default stdout)");
  ct.provider.attach(train_cmd);

  struct {
    std::string words, model;
    ProviderOptions provider;
  } cp;
  auto* predict_cmd = classify_cmd->add_subcommand("predict", "label words with a trained model");
  predict_cmd->add_option("--model", cp.model, "model file")->required();
  predict_cmd->add_option("--words", cp.words, "file with one word per line")->required();
  cp.provider.attach(predict_cmd);

  // ---- translate ----------------------------------------------------------------------
  struct {
    std::string known, unknown, candidates, method = "nwd";
    double base = 2.0;
    bool json = false;
    ProviderOptions provider;
  } tl;
  auto* translate_cmd = app.add_subcommand("translate", "match unknown words to translations");
  translate_cmd->add_option("--known", tl.known, "lines of <source>\\t<target>")->required();
  translate_cmd->add_option("--unknown", tl.unknown, "unknown source words, one per line")->required();
  translate_cmd->add_option("--candidates", tl.candidates, "candidate target words, one per line")
      ->required();
  translate_cmd->add_option("--method", tl.method, "nwd, nwd-unnorm or nwd-min")->capture_default_str();
  translate_cmd->add_option("--base", tl.base, "logarithm base")->capture_default_str();
  translate_cmd->add_flag("--json", tl.json, "JSON output");
  tl.provider.attach(translate_cmd);

  // ---- qa ---------------------------------------------------------------------------
  struct {
    std::string key, given, method = "nwd-min";
    std::vector<std::string> candidates;
    double base = 2.0;
    ProviderOptions provider;
  } qa;
  auto* qa_cmd = app.add_subcommand("qa", "rank candidate answers against a key term");
  qa_cmd->add_option("key", qa.key, "key term of the question")->required();
  qa_cmd->add_option("candidates", qa.candidates, "candidate answers")->required();
  qa_cmd->add_option("--given", qa.given, "condition term");
  qa_cmd->add_option("--method", qa.method, "nwd-min or nwd")
      ->check(CLI::IsMember({"nwd-min", "nwd"}))
      ->capture_default_str();
  qa_cmd->add_option("--base", qa.base, "logarithm base")->capture_default_str();
  qa.provider.attach(qa_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // ---- dispatch -------------------------------------------------------------------
  auto run_compression_pair = [&](const PairCompressionArgs& a, Method m, bool plag) {
    const auto z = make_compressor(a.compressor);
    const DataItem x = load_item(a.a, a.literal);
    const DataItem y = load_item(a.b, a.literal);
    DistanceValue v;
    if (plag) {
      v = plagiarism_score(std::string(x.bytes.begin(), x.bytes.end()),
                           std::string(y.bytes.begin(), y.bytes.end()), *z);
    } else {
      v = m == Method::ncd ? ncd(*z, x, y) : ncd_sum(*z, x, y);
    }
    const Fingerprint fp{plag ? "plag" : std::string(to_string(m)), z->name(), 2.0,
                         std::string(kToolVersion), std::nullopt};
    std::cout << pair_output(v, fp, a.precision, a.json);
  };

  if (ncd_cmd->parsed()) {
    run_compression_pair(ncd_args, Method::ncd, false);
  } else if (sum_cmd->parsed()) {
    run_compression_pair(sum_args, Method::ncd_sum, false);
  } else if (plag_cmd->parsed()) {
    run_compression_pair(plag_args, Method::ncd_sum, true);
  } else if (nwd_cmd->parsed() || min_cmd->parsed()) {
    const bool is_min = min_cmd->parsed();
    const PairWebArgs& a = is_min ? min_args : nwd_args;
    const auto p = a.provider.open();
    DistanceValue v;
    if (!is_min) v = nwd(*p, a.x, a.y, a.base);
    else if (!a.given.empty()) v = nwd_min_conditional(*p, a.x, a.y, a.given, a.base);
    else v = nwd_min(*p, a.x, a.y, a.base);
    const Fingerprint fp{std::string(to_string(v.method)), p->id(), a.base,
                         std::string(kToolVersion), std::nullopt};
    std::cout << pair_output(v, fp, a.precision, a.json);
  } else if (matrix_cmd->parsed()) {
    const Method m = parse_method(mx.method);
    DistanceMatrix d;
    if (is_compression_method(m)) {
      if (mx.dir.empty()) throw DegenerateInput("compression methods need a directory of files");
      const auto z = make_compressor(mx.compressor);
      d = distance_matrix(read_data_items(mx.dir), m, *z);
    } else {
      if (mx.terms.empty()) throw DegenerateInput("web methods need --terms");
      if (mx.provider.corpus.empty() && mx.provider.snapshot.empty() && mx.provider.remote.empty() &&
          mx.provider.replay.empty()) {
        throw DegenerateInput("web methods need one of --corpus, --snapshot, --remote, --replay");
      }
      const auto p = mx.provider.open();
      d = distance_matrix(read_lines(mx.terms), m, *p, mx.base);
    }
    if (mx.format == "csv") emit(to_csv(d), mx.out);
    else if (mx.format == "phylip") emit(to_phylip(d), mx.out);
    else emit(to_json(d), mx.out);
  } else if (tree_cmd->parsed()) {
    const DistanceMatrix d = read_matrix_file(tr.matrix);
    HillClimbParams params;
    params.restarts = tr.restarts;
    params.patience = tr.patience;
    params.seed = tr.seed;
    const TreeResult result = hill_climb(d, params);
    Fingerprint fp = d.fingerprint();
    fp.seed = tr.seed;
    if (fp.tool_version.empty()) fp.tool_version = std::string(kToolVersion);
    char s_buf[64];
    std::snprintf(s_buf, sizeof s_buf, "%.6f", result.score.s);
    const std::string meta = fp.to_string() + " restarts=" + std::to_string(tr.restarts) +
                             " patience=" + std::to_string(tr.patience) + " s=" + s_buf;
    if (tr.format == "newick") emit("[infodist " + meta + "]" + to_newick(result.tree) + "\n", tr.out);
    else emit("// infodist " + meta + "\n" + to_dot(result.tree), tr.out);
    if (!tr.trace.empty()) emit(trace_to_csv(result.trace), tr.trace);
  } else if (index_cmd->parsed()) {
    const auto index = CorpusIndex::build(read_corpus_dir(ix.dir));
    std::vector<TermSet> tuples;
    if (!ix.terms.empty()) {
      std::vector<std::string> terms;
      for (const auto& t : read_lines(ix.terms)) terms.push_back(fold_case(t));
      tuples = all_tuples(terms, ix.arity);
    } else {
      std::vector<std::string> vocab;
      for (const auto& doc : read_corpus_dir(ix.dir)) {
        for (auto& t : tokenize(doc.text)) vocab.push_back(std::move(t));
      }
      tuples = all_tuples(vocab, 1);
    }
    const auto snap = FrequencySnapshot::capture(
        index, tuples, true,
        {{"source", index.id()}, {"tokenizer", std::string(kTokenizerVersion)}});
    emit(snap.to_text(), ix.out);
  } else if (snapshot_cmd->parsed()) {
    const auto p = sn.provider.open();
    const auto snap = FrequencySnapshot::capture(*p, all_tuples(read_lines(sn.terms), sn.arity),
                                                 false, {{"source", p->id()}});
    emit(snap.to_text(), sn.out);
  } else if (audit_cmd->parsed()) {
    const auto z = make_compressor(au.compressor);
    const auto corpus = read_data_items(au.dir);
    const auto report = normality_audit(*z, corpus, AuditOptions{au.seed});
    const auto expansion = expansion_audit(*z, corpus);
    if (au.json) {
      std::cout << to_json(report, &expansion);
    } else {
      std::cout << to_text(report);
      std::cout << "expansion worst " << format_distance(expansion.worst_constant_bits)
                << " bits (" << expansion.worst_label << "), ceiling "
                << format_distance(expansion.ceiling_bits)
                << (expansion.passed ? ", passed\n" : ", FAILED\n");
    }
  } else if (train_cmd->parsed()) {
    if (ct.provider.live()) {
      throw ProviderFailure("training needs a frozen provider (--snapshot, --corpus or --replay)");
    }
    std::vector<std::string> words;
    std::vector<int> labels;
    for (const auto& line : read_lines(ct.words)) {
      const auto f = split_tab(line);
      if (f.size() != 2 || (f[1] != "+1" && f[1] != "1" && f[1] != "-1")) {
        throw DegenerateLabels("bad training line '" + line + "' (want <word>\\t<+1|-1>)");
      }
      words.push_back(f[0]);
      labels.push_back(f[1] == "-1" ? -1 : 1);
    }
    const Method m = parse_method(ct.method);
    const auto p = ct.provider.open();
    const auto avs = build_anchor_vectors(words, read_lines(ct.anchors), labels, *p, m, ct.base);
    if (auto w = dimension_warning(avs)) std::cerr << "warning: " << *w << "\n";
    const Fingerprint fp{std::string(to_string(m)), p->id(), ct.base, std::string(kToolVersion),
                         ct.seed};
    const auto model = train_classifier(avs, fp.to_string(), ct.folds, ct.seed);
    std::cerr << "cv accuracy " << fixed(model.cv_accuracy, 4) << ", training accuracy "
              << fixed(model.training_accuracy, 4) << "\n";
    emit(save_model(model), ct.out);
  } else if (predict_cmd->parsed()) {
    std::ifstream in(cp.model, std::ios::binary);
    if (!in) throw MalformedModel("cannot read '" + cp.model + "'", {cp.model});
    std::stringstream buf;
    buf << in.rdbuf();
    const auto model = load_model(buf.str());
    Fingerprint fp;
    {
      // The stored fingerprint fixes method, base and seed; only the backend
      // is re-derived from the provider given now.
      std::istringstream fields(model.fingerprint);
      std::string tok;
      while (fields >> tok) {
        const auto eq = tok.find('=');
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "method") fp.method = val;
        else if (key == "base") fp.log_base = std::stod(val);
        else if (key == "seed" && val != "-") fp.seed = std::stoull(val);
        else if (key == "version") fp.tool_version = val;
      }
    }
    const auto p = cp.provider.open();
    fp.backend = p->id();
    const auto words = read_lines(cp.words);
    const auto avs = build_anchor_vectors(words, model.anchors, {}, *p, parse_method(fp.method),
                                          fp.log_base);
    const auto labels = classify(model, avs, fp.to_string());
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::cout << words[i] << "\t" << (labels[i] > 0 ? "+1" : "-1") << "\n";
    }
  } else if (translate_cmd->parsed()) {
    VocabularyBasis basis;
    for (const auto& line : read_lines(tl.known)) {
      const auto f = split_tab(line);
      if (f.size() != 2) throw InvalidVocabulary("bad known pair line '" + line + "'");
      basis.known.emplace_back(f[0], f[1]);
    }
    basis.unknown_source = read_lines(tl.unknown);
    basis.candidate_target = read_lines(tl.candidates);
    const Method m = parse_method(tl.method);
    const auto p = tl.provider.open();
    const auto avs_dist = [&](const std::string& x, const std::string& y) {
      switch (m) {
        case Method::nwd: return nwd(*p, x, y, tl.base).value;
        case Method::nwd_unnorm: return nwd_unnormalized(*p, x, y, tl.base).value;
        case Method::nwd_min: return nwd_min(*p, x, y, tl.base).value;
        default: throw ConditionUnsupported("translation needs a web distance method");
      }
    };
    const auto r = match_translation(basis, avs_dist, avs_dist);
    if (tl.json) {
      nlohmann::ordered_json doc;
      doc["success"] = r.success;
      doc["correlation"] = r.correlation;
      doc["pairs"] = nlohmann::ordered_json::array();
      if (r.success) {
        for (const auto& [s, t] : r.pairs) doc["pairs"].push_back({{"source", s}, {"target", t}});
      }
      doc["backend"] = p->id();
      std::cout << doc.dump(2) << "\n";
    } else if (r.success) {
      for (const auto& [s, t] : r.pairs) std::cout << s << "\t" << t << "\n";
      std::cout << "correlation " << fixed(r.correlation, 6) << "\n";
    } else {
      std::cout << "no positive correlation (best " << fixed(r.correlation, 6)
                << "); vocabulary not extended\n";
    }
  } else if (qa_cmd->parsed()) {
    const auto p = qa.provider.open();
    const auto ranked = rank_answers(
        qa.key, qa.candidates, *p,
        qa.given.empty() ? std::nullopt : std::optional<std::string>(qa.given),
        qa.method == "nwd" ? RankMethod::nwd : RankMethod::nwd_min, qa.base);
    std::cout << to_json(ranked);
  }
  return 0;
}

std::string describe(const Error& e) {
  std::string msg = "error: " + e.kind() + ": " + e.what();
  if (!e.labels().empty()) {
    msg += " [";
    for (std::size_t i = 0; i < e.labels().size(); ++i) msg += (i ? ", " : "") + e.labels()[i];
    msg += "]";
  }
  return msg;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << describe(e) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
