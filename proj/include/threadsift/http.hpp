// Copyright 2026 The threadsift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef THREADSIFT_HTTP_HPP_
#define THREADSIFT_HTTP_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "threadsift/errors.hpp"

namespace threadsift {

struct CaseInsensitiveLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

using HeaderMap = std::map<std::string, std::string, CaseInsensitiveLess>;

struct HttpRequest {
  std::string url;
  HeaderMap headers;
};

struct HttpResponse {
  int status = 0;
  HeaderMap headers;
  std::string body;

  std::optional<std::string> header(const std::string& name) const;
};

/// Connection-level failure (timeout, DNS, reset). Retryable.
class TransportError : public NetworkFailure {
 public:
  using NetworkFailure::NetworkFailure;
};

/// One GET round trip. Implementations must be safe to call concurrently.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const HttpRequest& request) = 0;
};

/// libcurl-backed HTTPS transport.
std::shared_ptr<Transport> make_curl_transport(long timeout_seconds = 30);

/// Fixture entry: one recorded response for one request URL.
struct RecordedExchange {
  std::string url;
  HttpResponse response;
};

/// Serves recorded responses without touching the network.
///
/// A fixture directory holds `manifest.json` and a `responses/` folder:
///
///     manifest.json       {"format_version": 1,
///                          "entries": [{"url": "...", "response": "0001"}, ...]}
///     responses/0001.body         verbatim wire payload
///     responses/0001.meta.json    {"status": 200, "headers": {...}}
///
/// Entries sharing a URL are served in manifest order; once exhausted the
/// last one keeps being served. A request with no entry is a NetworkFailure.
class ReplayTransport final : public Transport {
 public:
  ReplayTransport() = default;

  /// Throws FixtureNotFound when the directory or manifest is missing or
  /// unreadable.
  static std::shared_ptr<ReplayTransport> load(const std::filesystem::path& dir);

  void add(std::string url, HttpResponse response);
  HttpResponse get(const HttpRequest& request) override;

  /// URLs requested so far, in order.
  std::vector<std::string> requests() const;

 private:
  struct Slot {
    std::vector<HttpResponse> responses;
    std::size_t next = 0;
  };
  mutable std::mutex mu_;
  std::map<std::string, Slot> slots_;
  std::vector<std::string> log_;
};

/// Writes `exchanges` in the fixture layout read by ReplayTransport::load.
void write_fixture(const std::filesystem::path& dir,
                   const std::vector<RecordedExchange>& exchanges);

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(const std::string& s);

}  // namespace threadsift

#endif  // THREADSIFT_HTTP_HPP_
