#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "infodist/frequency.hpp"

namespace infodist {

/// Frequency provider over the HTTP contract
///
///     GET /total                   -> {"n": <int>}
///     GET /count?t=<term>&t=<term> -> {"count": <int>}
///
/// Every exchange is kept in a replay log:
///
///     NWD-REPLAY v1
///     #endpoint <url>
///     <request line>\t<response body>     sorted by request line
///     SESSION <sha256 of everything above>
///
/// A replaying provider never touches the network and raises ReplayMiss for
/// requests the log does not hold.
class RemoteProvider final : public FrequencyProvider {
 public:
  /// Live client for "http://host[:port]". When `record_path` is set the log is
  /// rewritten there after each new exchange.
  static std::shared_ptr<RemoteProvider> connect(const std::string& endpoint,
                                                 std::optional<std::string> record_path = {});
  /// Throws ProviderFailure for unreadable or tampered logs.
  static std::shared_ptr<RemoteProvider> replay(const std::string& log_path);
  static std::shared_ptr<RemoteProvider> replay_text(const std::string& log_text);

  std::uint64_t count_set(const TermSet& terms) const override;
  std::uint64_t total() const override;
  std::string id() const override { return "remote:" + endpoint_; }

  bool replaying() const noexcept { return replaying_; }
  const std::string& endpoint() const noexcept { return endpoint_; }
  std::string log_text() const;
  std::size_t network_requests() const;

  /// Request line used for a count query, e.g. "GET /count?t=horse&t=rider".
  static std::string count_request(const TermSet& terms);

 private:
  RemoteProvider(std::string endpoint, bool replaying, std::optional<std::string> record_path);

  std::string fetch(const std::string& request_line) const;
  std::string log_text_locked() const;

  std::string endpoint_;
  bool replaying_;
  std::optional<std::string> record_path_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::string> log_;
  mutable std::size_t network_requests_ = 0;
};

}  // namespace infodist
