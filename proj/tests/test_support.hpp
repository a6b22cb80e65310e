#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "infodist/compressors.hpp"
#include "infodist/frequency.hpp"
#include "infodist/random.hpp"
#include "infodist/snapshot.hpp"

namespace testing_support {

inline std::string fixture_dir() { return INFODIST_FIXTURE_DIR; }
inline std::string data_dir() { return INFODIST_DATA_DIR; }
inline std::string text_fixture_dir() { return fixture_dir() + "/texts"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline infodist::Bytes to_bytes(std::string_view s) { return {s.begin(), s.end()}; }

/// Z(x) looked up in a table keyed by the exact bytes.
class TableCompressor final : public infodist::Compressor {
 public:
  void set(std::string_view data, std::uint64_t bits) { table_[std::string(data)] = bits; }

  std::string name() const override { return "table"; }
  std::optional<std::size_t> window() const override { return std::nullopt; }
  infodist::Granularity granularity() const override { return infodist::Granularity::bits; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override {
    const auto it = table_.find(std::string(data.begin(), data.end()));
    if (it == table_.end()) throw std::logic_error("table compressor: unknown input");
    return it->second;
  }
  double identity_bound_bits(std::size_t) const override { return 0.0; }

 private:
  std::map<std::string, std::uint64_t> table_;
};

/// Z(x) = summed weight of the distinct byte values in x. Satisfies identity,
/// monotonicity, symmetry and distributivity exactly (weights of a set union
/// are submodular).
class SetUnionCompressor final : public infodist::Compressor {
 public:
  explicit SetUnionCompressor(std::vector<std::uint64_t> weights) : weights_(std::move(weights)) {}

  std::string name() const override { return "set-union"; }
  std::optional<std::size_t> window() const override { return std::nullopt; }
  infodist::Granularity granularity() const override { return infodist::Granularity::bits; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override {
    std::vector<bool> seen(weights_.size(), false);
    std::uint64_t total = 0;
    for (auto b : data) {
      if (!seen.at(b)) {
        seen[b] = true;
        total += weights_[b];
      }
    }
    return total;
  }
  double identity_bound_bits(std::size_t) const override { return 0.0; }

 private:
  std::vector<std::uint64_t> weights_;
};

/// Z(x) = 8·ℓ(x): no compression at all.
class IdentityCompressor final : public infodist::Compressor {
 public:
  std::string name() const override { return "identity"; }
  std::optional<std::size_t> window() const override { return std::nullopt; }
  infodist::Granularity granularity() const override { return infodist::Granularity::bytes; }
  std::uint64_t compressed_bits(std::span<const std::uint8_t> data) const override {
    return 8 * data.size();
  }
};

/// Serves a snapshot over the count protocol on 127.0.0.1. `inflate` adds to
/// every count (to provoke count > N), `fail_status` answers every request
/// with that HTTP status.
class MockCountServer {
 public:
  explicit MockCountServer(infodist::FrequencySnapshot snap) : snap_(std::move(snap)) {
    server_.Get("/total", [this](const httplib::Request&, httplib::Response& res) {
      ++requests_;
      if (fail_status_) {
        res.status = fail_status_;
        return;
      }
      res.set_content(nlohmann::json{{"n", snap_.total()}}.dump(), "application/json");
    });
    server_.Get("/count", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      if (fail_status_) {
        res.status = fail_status_;
        return;
      }
      std::vector<std::string> terms;
      for (std::size_t i = 0; i < req.get_param_value_count("t"); ++i) {
        terms.push_back(req.get_param_value("t", i));
      }
      if (garbage_) {
        res.set_content("not json", "text/plain");
        return;
      }
      try {
        const auto c = snap_.count(terms) + inflate_;
        res.set_content(nlohmann::json{{"count", c}}.dump(), "application/json");
      } catch (const std::exception& e) {
        res.status = 404;
        res.set_content(e.what(), "text/plain");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockCountServer() {
    server_.stop();
    thread_.join();
  }
  MockCountServer(const MockCountServer&) = delete;
  MockCountServer& operator=(const MockCountServer&) = delete;

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::size_t requests() const { return requests_; }
  void set_inflate(std::uint64_t v) { inflate_ = v; }
  void set_fail_status(int status) { fail_status_ = status; }
  void set_garbage(bool g) { garbage_ = g; }

 private:
  infodist::FrequencySnapshot snap_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::uint64_t> inflate_{0};
  std::atomic<int> fail_status_{0};
  std::atomic<bool> garbage_{false};
};

inline infodist::FrequencySnapshot example34() {
  return infodist::FrequencySnapshot::load(data_dir() + "/example34.snap");
}

inline infodist::Bytes random_bytes(infodist::Rng& rng, std::size_t n) {
  infodist::Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.index(256));
  return out;
}

/// First-order Markov text over {A,C,G,T}; `stay` is the probability of
/// repeating the previous symbol.
inline infodist::Bytes markov_dna(infodist::Rng& rng, std::size_t n, double stay) {
  static constexpr char kAlphabet[] = "ACGT";
  infodist::Bytes out(n);
  std::size_t s = rng.index(4);
  for (auto& b : out) {
    if (rng.uniform() >= stay) s = rng.index(4);
    b = static_cast<std::uint8_t>(kAlphabet[s]);
  }
  return out;
}

/// Order-4 Markov text over {A,C,G,T}. Every 4-symbol context has a preferred
/// successor drawn once from `table_seed`, taken with probability `follow`;
/// sequences from one table share many k-mers.
inline infodist::Bytes markov_dna_order4(std::uint64_t table_seed, infodist::Rng& rng, std::size_t n,
                                         double follow) {
  static constexpr char kAlphabet[] = "ACGT";
  infodist::Rng table_rng(table_seed);
  std::vector<std::size_t> preferred(256);
  for (auto& p : preferred) p = table_rng.index(4);
  infodist::Bytes out(n);
  std::size_t context = rng.index(256);
  for (auto& b : out) {
    const std::size_t s = rng.uniform() < follow ? preferred[context] : rng.index(4);
    b = static_cast<std::uint8_t>(kAlphabet[s]);
    context = ((context << 2) | s) & 255u;
  }
  return out;
}

}  // namespace testing_support
