#include "infodist/remote_provider.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "infodist/error.hpp"
#include "infodist/hash.hpp"

namespace infodist {

namespace {

constexpr std::string_view kLogHeader = "NWD-REPLAY v1";

std::string url_encode(const std::string& s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

std::uint64_t read_field(const std::string& body, const char* field, const std::string& request) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const std::exception&) {
    throw ProviderFailure("unparseable response to '" + request + "': " + body, {request});
  }
  if (!doc.is_object() || !doc.contains(field) || !doc[field].is_number_integer() ||
      doc[field].get<std::int64_t>() < 0) {
    throw ProviderFailure("response to '" + request + "' lacks a non-negative integer '" + field +
                              "': " + body,
                          {request});
  }
  return doc[field].get<std::uint64_t>();
}

}  // namespace

RemoteProvider::RemoteProvider(std::string endpoint, bool replaying,
                               std::optional<std::string> record_path)
    : endpoint_(std::move(endpoint)), replaying_(replaying), record_path_(std::move(record_path)) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
}

std::shared_ptr<RemoteProvider> RemoteProvider::connect(const std::string& endpoint,
                                                        std::optional<std::string> record_path) {
  if (endpoint.rfind("http://", 0) != 0) {
    throw ProviderFailure("endpoint must be an http:// URL: '" + endpoint + "'", {endpoint});
  }
  return std::shared_ptr<RemoteProvider>(new RemoteProvider(endpoint, false, std::move(record_path)));
}

std::shared_ptr<RemoteProvider> RemoteProvider::replay(const std::string& log_path) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw ProviderFailure("cannot open replay log '" + log_path + "'", {log_path});
  std::stringstream buf;
  buf << in.rdbuf();
  return replay_text(buf.str());
}

std::shared_ptr<RemoteProvider> RemoteProvider::replay_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string endpoint;
  std::map<std::string, std::string> log;
  std::string hashed;
  bool sealed = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (sealed) throw ProviderFailure("replay log has data after SESSION line");
    if (line_no == 1) {
      if (line != kLogHeader) throw ProviderFailure("not a replay log (bad header)");
    } else if (line.rfind("SESSION ", 0) == 0) {
      if (line.substr(8) != sha256_hex(hashed)) {
        throw ProviderFailure("replay log session hash does not match its contents");
      }
      sealed = true;
      continue;
    } else if (line.rfind("#endpoint ", 0) == 0) {
      endpoint = line.substr(10);
    } else {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw ProviderFailure("replay log line " + std::to_string(line_no) + " has no response");
      }
      log[line.substr(0, tab)] = line.substr(tab + 1);
    }
    hashed += line + "\n";
  }
  if (!sealed) throw ProviderFailure("replay log is missing its SESSION line");
  auto p = std::shared_ptr<RemoteProvider>(new RemoteProvider(endpoint, true, std::nullopt));
  p->log_ = std::move(log);
  return p;
}

std::string RemoteProvider::count_request(const TermSet& terms) {
  std::string req = "GET /count?";
  for (std::size_t k = 0; k < terms.size(); ++k) {
    req += (k ? "&t=" : "t=") + url_encode(terms[k]);
  }
  return req;
}

std::string RemoteProvider::fetch(const std::string& request_line) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = log_.find(request_line); it != log_.end()) return it->second;
    if (replaying_) throw ReplayMiss("request not in replay log: " + request_line, {request_line});
  }
  const std::string path = request_line.substr(4);
  httplib::Client client(endpoint_);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(30, 0);
  auto res = client.Get(path);
  if (!res) {
    throw ProviderFailure("request '" + request_line + "' to " + endpoint_ +
                              " failed: " + httplib::to_string(res.error()),
                          {request_line});
  }
  if (res->status != 200) {
    throw ProviderFailure("request '" + request_line + "' returned HTTP " +
                              std::to_string(res->status),
                          {request_line});
  }
  std::string body = res->body;
  // Keep the log line-oriented: bodies are JSON, so raw newlines are insignificant.
  std::erase_if(body, [](char c) { return c == '\n' || c == '\r' || c == '\t'; });

  std::lock_guard lock(mu_);
  ++network_requests_;
  log_.emplace(request_line, body);
  if (record_path_) {
    std::ofstream out(*record_path_, std::ios::binary | std::ios::trunc);
    if (!out) throw ProviderFailure("cannot write replay log '" + *record_path_ + "'");
    out << log_text_locked();
  }
  return log_.at(request_line);
}

std::uint64_t RemoteProvider::total() const {
  const std::string req = "GET /total";
  const std::uint64_t n = read_field(fetch(req), "n", req);
  if (n == 0) throw ProviderFailure("provider reported N = 0", {req});
  return n;
}

std::uint64_t RemoteProvider::count_set(const TermSet& terms) const {
  if (terms.empty() || terms.size() > kMaxArity) {
    throw ArityUnsupported("term sets must hold 1 to 3 terms", terms);
  }
  const std::string req = count_request(terms);
  const std::uint64_t c = read_field(fetch(req), "count", req);
  const std::uint64_t n = total();
  if (c > n) {
    throw ProviderFailure("count " + std::to_string(c) + " for '" + req + "' exceeds N = " +
                              std::to_string(n),
                          terms);
  }
  return c;
}

std::string RemoteProvider::log_text_locked() const {
  std::string body(kLogHeader);
  body += "\n#endpoint " + endpoint_ + "\n";
  for (const auto& [req, resp] : log_) body += req + "\t" + resp + "\n";
  return body + "SESSION " + sha256_hex(body) + "\n";
}

std::string RemoteProvider::log_text() const {
  std::lock_guard lock(mu_);
  return log_text_locked();
}

std::size_t RemoteProvider::network_requests() const {
  std::lock_guard lock(mu_);
  return network_requests_;
}

}  // namespace infodist
