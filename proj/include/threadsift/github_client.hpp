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

#ifndef THREADSIFT_GITHUB_CLIENT_HPP_
#define THREADSIFT_GITHUB_CLIENT_HPP_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "threadsift/clock.hpp"
#include "threadsift/http.hpp"
#include "threadsift/rate_gate.hpp"

namespace threadsift {

using IssueId = std::int64_t;
using CommentId = std::int64_t;

/// One hit from the issue search endpoint.
struct IssueRef {
  IssueId id = 0;
  std::int64_t number = 0;
  std::string repo_full_name;
  std::string title;
  std::string body;
  std::string html_url;
  std::string api_url;
  std::string comments_url;
  std::int64_t comment_count = 0;
  std::string created_at;
  std::string updated_at;

  bool operator==(const IssueRef&) const = default;
};

/// One unprocessed comment; `body` is kept byte-for-byte as received.
struct RawComment {
  IssueId issue_id = 0;
  CommentId comment_id = 0;
  std::string author_login;
  std::string body;
  std::string created_at;

  bool operator==(const RawComment&) const = default;
};

struct RateStatus {
  static constexpr std::int64_t kUnlimited = std::numeric_limits<std::int64_t>::max();

  std::int64_t search_remaining = 0;
  TimePoint search_reset_at{};
  std::int64_t core_remaining = 0;
  TimePoint core_reset_at{};
};

enum class SessionMode { kLive, kReplay };

enum class SortKey { kBestMatch, kComments, kCreated, kUpdated, kReactions };
enum class SortOrder { kAsc, kDesc };

std::string_view to_string(SortKey k);
std::string_view to_string(SortOrder o);
std::optional<SortKey> parse_sort_key(std::string_view s);
std::optional<SortOrder> parse_sort_order(std::string_view s);

struct SessionOptions {
  std::optional<std::string> token;
  SessionMode mode = SessionMode::kLive;
  std::filesystem::path fixture_dir;
  std::string base_endpoint = "https://api.github.com";
  std::string user_agent = "threadsift/1.0";
  /// Replaces the default transport (libcurl in live mode, the fixture
  /// directory in replay mode).
  std::shared_ptr<Transport> transport;
  /// Defaults to the system clock.
  std::shared_ptr<Clock> clock;
  /// When false, an exhausted budget raises RateLimited instead of waiting.
  bool wait_on_rate_limit = true;
  int max_attempts = 4;
  Seconds backoff_base{1.0};
  std::uint64_t jitter_seed = 0x7468726561647331ULL;
  /// Bound on concurrent comment fetches.
  int parallelism = 4;
};

/// Authenticated, rate-limited handle on the GitHub REST endpoints.
///
/// Copies share one underlying state (transport, rate gate, probe cache), so
/// a Session may be handed to several worker threads at once.
class Session {
 public:
  /// Opens a session. Live mode probes /rate_limit once; a 401 there raises
  /// InvalidToken. Replay mode raises FixtureNotFound if the fixture
  /// directory cannot be loaded, and never touches the network.
  static Session open(SessionOptions options);

  SessionMode mode() const;
  bool authenticated() const;
  int parallelism() const;

  /// Searches issues. `limit` must lie in [1, 1000] and `query` must not be
  /// blank (std::invalid_argument otherwise). Results keep endpoint order
  /// with duplicate ids removed; pagination uses pages of 100.
  std::vector<IssueRef> search_issues(const std::string& query, int limit,
                                      SortKey sort = SortKey::kBestMatch,
                                      SortOrder order = SortOrder::kDesc) const;

  /// All comments of `issue`, oldest first. 404/410 raise IssueGone.
  std::vector<RawComment> fetch_comments(const IssueRef& issue) const;

  /// Current budgets. Replay sessions report RateStatus::kUnlimited.
  RateStatus check_rate_limit() const;

  /// Budget captured by the opening probe (live mode only).
  std::optional<RateStatus> probed_rate_status() const;

  RateGate* gate() const;

 private:
  struct State;
  explicit Session(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

/// Search endpoint URL for one page, exactly as the client requests it.
std::string search_url(const std::string& base, const std::string& query, int page,
                       SortKey sort, SortOrder order);

/// Comments URL for one page of `comments_url`.
std::string comments_page_url(const std::string& comments_url, int page);

inline constexpr int kPageSize = 100;
inline constexpr int kMaxSearchResults = 1000;

}  // namespace threadsift

#endif  // THREADSIFT_GITHUB_CLIENT_HPP_
