#include "infodist/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "infodist/error.hpp"
#include "infodist/hash.hpp"

namespace infodist {

namespace {

constexpr std::string_view kHeader = "NWD-SNAPSHOT v1";

bool needs_escape(unsigned char c) { return c <= 0x20 || c == 0x7F || c == '%' || c == '#'; }

std::uint64_t parse_count(std::string_view s, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw MalformedSnapshot("line " + std::to_string(line_no) + ": bad integer '" +
                            std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string join_terms(const TermSet& t) {
  std::string s;
  for (const auto& term : t) s += (s.empty() ? "" : " + ") + term;
  return s;
}

}  // namespace

std::string percent_encode(std::string_view term) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : term) {
    if (needs_escape(c)) {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string percent_decode(std::string_view text) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    if (i + 2 >= text.size()) {
      throw MalformedSnapshot("truncated percent escape in '" + std::string(text) + "'");
    }
    const int hi = hex(text[i + 1]), lo = hex(text[i + 2]);
    if (hi < 0 || lo < 0) throw MalformedSnapshot("bad percent escape in '" + std::string(text) + "'");
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

FrequencySnapshot::FrequencySnapshot(std::uint64_t n, std::map<TermSet, std::uint64_t> entries,
                                     bool closed_world,
                                     std::map<std::string, std::string> metadata)
    : n_(n),
      entries_(std::move(entries)),
      closed_world_(closed_world),
      metadata_(std::move(metadata)) {
  metadata_.erase("world");
  if (n_ == 0) throw MalformedSnapshot("N must be positive");
  for (const auto& [terms, count] : entries_) {
    if (terms.empty() || terms.size() > kMaxArity || make_term_set(terms) != terms) {
      throw MalformedSnapshot("tuple '" + join_terms(terms) + "' is not a sorted set of 1-3 terms");
    }
    if (count > n_) {
      throw MalformedSnapshot("count " + std::to_string(count) + " for '" + join_terms(terms) +
                              "' exceeds N = " + std::to_string(n_));
    }
  }
  id_ = "snapshot:" + sha256_hex(to_text()).substr(0, 16);
}

FrequencySnapshot FrequencySnapshot::capture(const FrequencyProvider& provider,
                                             const std::vector<TermSet>& tuples, bool closed_world,
                                             std::map<std::string, std::string> metadata) {
  std::map<TermSet, std::uint64_t> entries;
  for (const auto& t : tuples) {
    const TermSet key = make_term_set(t);
    entries[key] = provider.count_set(key);
  }
  return FrequencySnapshot(provider.total(), std::move(entries), closed_world, std::move(metadata));
}

std::string FrequencySnapshot::to_text() const {
  std::string out(kHeader);
  out += "\nN " + std::to_string(n_) + "\n";
  auto meta = metadata_;
  if (closed_world_) meta["world"] = "closed";
  for (const auto& [key, value] : meta) out += "#" + key + " " + value + "\n";
  for (const auto& [terms, count] : entries_) {
    for (const auto& t : terms) out += percent_encode(t) + "\t";
    out += std::to_string(count) + "\n";
  }
  return out;
}

void FrequencySnapshot::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ProviderFailure("cannot write '" + path + "'", {path});
  out << to_text();
  if (!out) throw ProviderFailure("write to '" + path + "' failed", {path});
}

FrequencySnapshot FrequencySnapshot::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) -> MalformedSnapshot {
    return MalformedSnapshot("line " + std::to_string(line_no) + ": " + why);
  };

  ++line_no;
  if (!std::getline(in, line) || line != kHeader) throw fail("expected '" + std::string(kHeader) + "'");
  ++line_no;
  if (!std::getline(in, line) || line.rfind("N ", 0) != 0) throw fail("expected 'N <int>'");
  const std::uint64_t n = parse_count(std::string_view(line).substr(2), line_no);
  if (n == 0) throw fail("N must be positive");

  std::map<TermSet, std::uint64_t> entries;
  std::map<TermSet, std::size_t> line_of;
  std::map<std::string, std::string> metadata;
  bool closed = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto sp = line.find(' ');
      const std::string key = line.substr(1, sp == std::string::npos ? std::string::npos : sp - 1);
      const std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
      if (key == "world") {
        if (value != "closed" && value != "open") throw fail("world must be 'closed' or 'open'");
        closed = value == "closed";
      } else {
        metadata[key] = value;
      }
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() < 2 || fields.size() > kMaxArity + 1) {
      throw fail("expected 1-3 terms and a count");
    }
    std::vector<std::string> terms;
    for (std::size_t k = 0; k + 1 < fields.size(); ++k) {
      if (fields[k].empty()) throw fail("empty term");
      try {
        terms.push_back(percent_decode(fields[k]));
      } catch (const MalformedSnapshot& e) {
        throw fail(e.what());
      }
    }
    TermSet key = terms;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) throw fail("repeated term in tuple");
    const std::uint64_t count = parse_count(fields.back(), line_no);
    if (count > n) {
      throw fail("count " + std::to_string(count) + " exceeds N = " + std::to_string(n));
    }
    if (!entries.emplace(key, count).second) throw fail("duplicate tuple '" + join_terms(key) + "'");
    line_of[key] = line_no;
  }

  // Superset monotonicity among stored tuples.
  for (const auto& [terms, count] : entries) {
    if (terms.size() < 2) continue;
    for (std::size_t drop = 0; drop < terms.size(); ++drop) {
      TermSet sub = terms;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
      auto it = entries.find(sub);
      if (it != entries.end() && it->second < count) {
        line_no = line_of[terms];
        throw fail("count for '" + join_terms(terms) + "' exceeds count for subset '" +
                   join_terms(sub) + "'");
      }
    }
  }
  return FrequencySnapshot(n, std::move(entries), closed, std::move(metadata));
}

FrequencySnapshot FrequencySnapshot::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedSnapshot("cannot open '" + path + "'", {path});
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const MalformedSnapshot& e) {
    throw MalformedSnapshot(path + ": " + e.what(), {path});
  }
}

std::uint64_t FrequencySnapshot::count_set(const TermSet& terms) const {
  if (terms.empty() || terms.size() > kMaxArity) {
    throw ArityUnsupported("term sets must hold 1 to 3 terms", terms);
  }
  auto it = entries_.find(terms);
  if (it != entries_.end()) return it->second;
  if (closed_world_) return 0;
  throw MissingEntry("snapshot " + id_ + " has no entry for '" + join_terms(terms) + "'", terms);
}

FrequencySnapshot FrequencySnapshot::scaled(std::uint64_t factor) const {
  std::map<TermSet, std::uint64_t> entries;
  for (const auto& [terms, count] : entries_) entries[terms] = count * factor;
  return FrequencySnapshot(n_ * factor, std::move(entries), closed_world_, metadata_);
}

std::vector<TermSet> all_tuples(const std::vector<std::string>& terms, std::size_t max_arity) {
  std::vector<std::string> sorted = terms;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<TermSet> out;
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({sorted[i]});
    if (max_arity < 2) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back({sorted[i], sorted[j]});
      if (max_arity < 3) continue;
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({sorted[i], sorted[j], sorted[k]});
    }
  }
  return out;
}

}  // namespace infodist
