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

#include "threadsift/github_client.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "threadsift/errors.hpp"

namespace threadsift {

using nlohmann::json;

std::string_view to_string(SortKey k) {
  switch (k) {
    case SortKey::kBestMatch: return "best-match";
    case SortKey::kComments: return "comments";
    case SortKey::kCreated: return "created";
    case SortKey::kUpdated: return "updated";
    case SortKey::kReactions: return "reactions";
  }
  return "best-match";
}

std::string_view to_string(SortOrder o) { return o == SortOrder::kAsc ? "asc" : "desc"; }

std::optional<SortKey> parse_sort_key(std::string_view s) {
  for (auto k : {SortKey::kBestMatch, SortKey::kComments, SortKey::kCreated,
                 SortKey::kUpdated, SortKey::kReactions})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::optional<SortOrder> parse_sort_order(std::string_view s) {
  if (s == "asc") return SortOrder::kAsc;
  if (s == "desc") return SortOrder::kDesc;
  return std::nullopt;
}

std::string search_url(const std::string& base, const std::string& query, int page,
                       SortKey sort, SortOrder order) {
  std::string url = base + "/search/issues?q=" + url_encode(query) +
                    "&per_page=" + std::to_string(kPageSize) +
                    "&page=" + std::to_string(page);
  // best-match is the endpoint default and has no sort parameter.
  if (sort != SortKey::kBestMatch) {
    url += "&sort=";
    url += to_string(sort);
    url += "&order=";
    url += to_string(order);
  }
  return url;
}

std::string comments_page_url(const std::string& comments_url, int page) {
  const char sep = comments_url.find('?') == std::string::npos ? '?' : '&';
  return comments_url + sep + "per_page=" + std::to_string(kPageSize) +
         "&page=" + std::to_string(page);
}

namespace {

enum class Lane { kSearch, kCore, kFree };

std::string string_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

std::int64_t int_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) return 0;
  return it->get<std::int64_t>();
}

IssueRef parse_issue(const json& item) {
  IssueRef ref;
  ref.id = int_field(item, "id");
  ref.number = int_field(item, "number");
  ref.title = string_field(item, "title");
  ref.body = string_field(item, "body");
  ref.html_url = string_field(item, "html_url");
  ref.api_url = string_field(item, "url");
  ref.comments_url = string_field(item, "comments_url");
  ref.comment_count = std::max<std::int64_t>(0, int_field(item, "comments"));
  ref.created_at = string_field(item, "created_at");
  ref.updated_at = string_field(item, "updated_at");
  const std::string repo_url = string_field(item, "repository_url");
  if (auto pos = repo_url.find("/repos/"); pos != std::string::npos)
    ref.repo_full_name = repo_url.substr(pos + 7);
  if (ref.id <= 0 || ref.html_url.empty() || ref.api_url.empty())
    throw NetworkFailure("search result missing id or urls");
  return ref;
}

RawComment parse_comment(const json& item, IssueId issue_id) {
  RawComment c;
  c.issue_id = issue_id;
  c.comment_id = int_field(item, "id");
  c.body = string_field(item, "body");
  c.created_at = string_field(item, "created_at");
  if (auto user = item.find("user"); user != item.end() && user->is_object())
    c.author_login = string_field(*user, "login");
  return c;
}

json parse_body(const HttpResponse& resp, const std::string& url) {
  try {
    return json::parse(resp.body);
  } catch (const json::exception&) {
    throw NetworkFailure("malformed JSON from " + url);
  }
}

std::optional<double> header_number(const HttpResponse& resp, const char* name) {
  auto v = resp.header(name);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    double d = std::stod(*v, &used);
    if (used == 0 || !std::isfinite(d)) return std::nullopt;
    return d;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

TimePoint epoch_seconds(double s) { return TimePoint{Seconds{s}}; }

}  // namespace

struct Session::State {
  SessionOptions options;
  std::shared_ptr<Transport> transport;
  std::shared_ptr<Clock> clock;
  std::unique_ptr<RateGate> gate;
  std::optional<RateStatus> probe;

  std::mutex rng_mu;
  std::mt19937_64 rng;

  HeaderMap base_headers() const {
    HeaderMap h;
    h["Accept"] = "application/vnd.github+json";
    h["User-Agent"] = options.user_agent;
    if (options.token && !options.token->empty())
      h["Authorization"] = "Bearer " + *options.token;
    return h;
  }

  Seconds backoff(int attempt) {
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    double j;
    {
      std::lock_guard<std::mutex> lock(rng_mu);
      j = jitter(rng);
    }
    return options.backoff_base * std::pow(2.0, attempt - 1) * (1.0 + j);
  }

  void observe(const HttpResponse& resp, Lane lane) {
    if (!gate) return;
    auto remaining = header_number(resp, "X-RateLimit-Remaining");
    auto reset = header_number(resp, "X-RateLimit-Reset");
    if (!remaining || !reset) return;
    Resource r = lane == Lane::kSearch ? Resource::kSearch : Resource::kCore;
    if (auto name = resp.header("X-RateLimit-Resource")) {
      if (*name == "search") r = Resource::kSearch;
      else if (*name == "core") r = Resource::kCore;
      else return;
    } else if (lane == Lane::kFree) {
      return;
    }
    gate->observe(r, static_cast<std::int64_t>(*remaining), epoch_seconds(*reset));
  }

  /// One logical GET with throttling, Retry-After handling and bounded
  /// retries. Returns any non-retryable response for the caller to map.
  HttpResponse execute(const std::string& url, Lane lane) {
    HttpRequest req{url, base_headers()};
    const Resource resource = lane == Lane::kSearch ? Resource::kSearch : Resource::kCore;
    for (int attempt = 1;; ++attempt) {
      const bool last = attempt >= options.max_attempts;
      if (gate && lane != Lane::kFree) gate->acquire(resource, options.wait_on_rate_limit);

      HttpResponse resp;
      try {
        resp = transport->get(req);
      } catch (const TransportError& e) {
        if (last) throw NetworkFailure(std::string(e.what()) + " (retries exhausted)");
        clock->sleep_for(backoff(attempt));
        continue;
      }
      observe(resp, lane);

      if (resp.status >= 500) {
        if (last)
          throw NetworkFailure("HTTP " + std::to_string(resp.status) + " from " + url +
                               " (retries exhausted)");
        clock->sleep_for(backoff(attempt));
        continue;
      }
      if (resp.status == 403 || resp.status == 429) {
        std::optional<Seconds> wait;
        const auto retry_after = header_number(resp, "Retry-After");
        const auto remaining = header_number(resp, "X-RateLimit-Remaining");
        const auto reset = header_number(resp, "X-RateLimit-Reset");
        if (retry_after) {
          wait = Seconds{std::max(0.0, *retry_after)};
        } else if (remaining && *remaining <= 0 && reset) {
          wait = std::max(Seconds{0}, epoch_seconds(*reset) - clock->now());
        } else if (resp.status == 429) {
          wait = backoff(attempt);
        }
        if (!wait) throw AccessDenied("HTTP 403 from " + url);
        if (!options.wait_on_rate_limit || last)
          throw RateLimited("rate limited by " + url);
        const TimePoint until = clock->now() + *wait;
        if (gate && lane != Lane::kFree) {
          gate->block_until(resource, until);
        } else {
          clock->sleep_for(*wait);
        }
        continue;
      }
      return resp;
    }
  }
};

Session Session::open(SessionOptions options) {
  auto state = std::make_shared<State>();
  state->clock = options.clock ? options.clock : std::make_shared<SystemClock>();
  state->rng.seed(options.jitter_seed);
  if (options.max_attempts < 1) options.max_attempts = 1;
  if (options.parallelism < 1) options.parallelism = 1;

  if (options.mode == SessionMode::kReplay) {
    state->transport =
        options.transport ? options.transport : ReplayTransport::load(options.fixture_dir);
  } else {
    state->transport = options.transport ? options.transport : make_curl_transport();
    const bool authed = options.token && !options.token->empty();
    state->gate = std::make_unique<RateGate>(
        state->clock, authed ? kSearchAuthenticated : kSearchAnonymous,
        authed ? kCoreAuthenticated : kCoreAnonymous);
  }
  state->options = std::move(options);

  Session session(state);
  if (state->options.mode == SessionMode::kLive) state->probe = session.check_rate_limit();
  return session;
}

SessionMode Session::mode() const { return state_->options.mode; }

bool Session::authenticated() const {
  return state_->options.token && !state_->options.token->empty();
}

int Session::parallelism() const { return state_->options.parallelism; }

RateGate* Session::gate() const { return state_->gate.get(); }

std::optional<RateStatus> Session::probed_rate_status() const { return state_->probe; }

RateStatus Session::check_rate_limit() const {
  if (state_->options.mode == SessionMode::kReplay) {
    const TimePoint now = state_->clock->now();
    return {RateStatus::kUnlimited, now, RateStatus::kUnlimited, now};
  }
  const std::string url = state_->options.base_endpoint + "/rate_limit";
  HttpResponse resp = state_->execute(url, Lane::kFree);
  if (resp.status == 401) throw InvalidToken("GitHub rejected the supplied token (HTTP 401)");
  if (resp.status != 200)
    throw NetworkFailure("rate-limit probe returned HTTP " + std::to_string(resp.status));

  const json body = parse_body(resp, url);
  RateStatus status;
  try {
    const auto& res = body.at("resources");
    const auto& search = res.at("search");
    const auto& core = res.at("core");
    status.search_remaining = search.at("remaining").get<std::int64_t>();
    status.search_reset_at = epoch_seconds(search.at("reset").get<double>());
    status.core_remaining = core.at("remaining").get<std::int64_t>();
    status.core_reset_at = epoch_seconds(core.at("reset").get<double>());
  } catch (const json::exception&) {
    throw NetworkFailure("unexpected /rate_limit payload");
  }

  RateGate& gate = *state_->gate;
  gate.observe(Resource::kSearch, status.search_remaining, status.search_reset_at);
  gate.observe(Resource::kCore, status.core_remaining, status.core_reset_at);
  const GateStatus s = gate.status(Resource::kSearch);
  const GateStatus c = gate.status(Resource::kCore);
  status.search_remaining = std::max<std::int64_t>(0, std::min(status.search_remaining, s.remaining));
  status.core_remaining = std::max<std::int64_t>(0, std::min(status.core_remaining, c.remaining));
  if (s.remaining <= 0) status.search_reset_at = std::max(status.search_reset_at, s.reset_at);
  if (c.remaining <= 0) status.core_reset_at = std::max(status.core_reset_at, c.reset_at);
  return status;
}

std::vector<IssueRef> Session::search_issues(const std::string& query, int limit,
                                             SortKey sort, SortOrder order) const {
  if (limit < 1 || limit > kMaxSearchResults)
    throw std::invalid_argument("limit must be within [1, 1000], got " + std::to_string(limit));
  if (query.find_first_not_of(" \t\r\n") == std::string::npos)
    throw std::invalid_argument("query must not be blank");

  std::vector<IssueRef> out;
  std::unordered_set<IssueId> seen;
  const int pages = (limit + kPageSize - 1) / kPageSize;
  for (int page = 1; page <= pages; ++page) {
    const std::string url =
        search_url(state_->options.base_endpoint, query, page, sort, order);
    HttpResponse resp = state_->execute(url, Lane::kSearch);
    if (resp.status == 401) throw InvalidToken("GitHub rejected the supplied token (HTTP 401)");
    if (resp.status == 422) throw QueryRejected("search query rejected: " + query);
    if (resp.status != 200)
      throw NetworkFailure("search returned HTTP " + std::to_string(resp.status));

    const json body = parse_body(resp, url);
    auto items = body.find("items");
    if (items == body.end() || !items->is_array())
      throw NetworkFailure("search payload has no items array");
    for (const auto& item : *items) {
      IssueRef ref = parse_issue(item);
      if (!seen.insert(ref.id).second) continue;
      out.push_back(std::move(ref));
      if (static_cast<int>(out.size()) == limit) return out;
    }
    if (items->size() < static_cast<std::size_t>(kPageSize)) break;
  }
  return out;
}

std::vector<RawComment> Session::fetch_comments(const IssueRef& issue) const {
  if (issue.comments_url.empty())
    throw std::invalid_argument("issue " + std::to_string(issue.id) + " has no comments_url");
  std::vector<RawComment> out;
  if (issue.comment_count == 0) return out;

  std::set<CommentId> seen;
  for (int page = 1;; ++page) {
    const std::string url = comments_page_url(issue.comments_url, page);
    HttpResponse resp = state_->execute(url, Lane::kCore);
    if (resp.status == 401) throw InvalidToken("GitHub rejected the supplied token (HTTP 401)");
    if (resp.status == 404 || resp.status == 410)
      throw IssueGone("comments for issue " + std::to_string(issue.id) + " unavailable (HTTP " +
                      std::to_string(resp.status) + ")");
    if (resp.status != 200)
      throw NetworkFailure("comments returned HTTP " + std::to_string(resp.status));

    const json body = parse_body(resp, url);
    if (!body.is_array()) throw NetworkFailure("comments payload is not an array");
    for (const auto& item : body) {
      RawComment c = parse_comment(item, issue.id);
      if (seen.insert(c.comment_id).second) out.push_back(std::move(c));
    }
    if (body.size() < static_cast<std::size_t>(kPageSize)) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const RawComment& a, const RawComment& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.comment_id < b.comment_id;
  });
  return out;
}

}  // namespace threadsift
