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

#include "test_support.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "json.hpp"

namespace threadsift::testing {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path fixtures_dir() { return THREADSIFT_TEST_SOURCE_DIR "/fixtures"; }
fs::path golden_dir() { return THREADSIFT_TEST_SOURCE_DIR "/golden"; }
fs::path data_dir() { return THREADSIFT_TEST_DATA_DIR; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("threadsift-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

IssueRef make_issue(IssueId id, std::string title, std::string body, std::int64_t comment_count) {
  IssueRef r;
  r.id = id;
  r.number = id;
  r.repo_full_name = "owner/repo" + std::to_string(id % 7);
  r.title = std::move(title);
  r.body = std::move(body);
  r.api_url = std::string(kApi) + "/repos/" + r.repo_full_name + "/issues/" + std::to_string(r.number);
  r.html_url = "https://github.com/" + r.repo_full_name + "/issues/" + std::to_string(r.number);
  r.comments_url = r.api_url + "/comments";
  r.comment_count = comment_count;
  r.created_at = "2021-01-01T00:00:00Z";
  r.updated_at = "2021-01-02T00:00:00Z";
  return r;
}

std::string issue_json(const IssueRef& r) {
  json j = {{"id", r.id},
            {"number", r.number},
            {"title", r.title},
            {"body", r.body},
            {"html_url", r.html_url},
            {"url", r.api_url},
            {"repository_url", std::string(kApi) + "/repos/" + r.repo_full_name},
            {"comments_url", r.comments_url},
            {"comments", r.comment_count},
            {"created_at", r.created_at},
            {"updated_at", r.updated_at}};
  return j.dump();
}

std::string comment_json(const RawComment& c) {
  json j = {{"id", c.comment_id},
            {"user", {{"login", c.author_login}}},
            {"body", c.body},
            {"created_at", c.created_at}};
  return j.dump();
}

HttpResponse json_response(int status, std::string body, HeaderMap headers) {
  HttpResponse r;
  r.status = status;
  r.body = std::move(body);
  r.headers = std::move(headers);
  r.headers["Content-Type"] = "application/json";
  return r;
}

HttpResponse RecordingTransport::get(const HttpRequest& request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    log_.push_back({request, clock_->now()});
  }
  return inner_->get(request);
}

std::vector<RecordingTransport::Entry> RecordingTransport::log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

std::vector<TimePoint> RecordingTransport::times_of(const std::string& fragment) const {
  std::vector<TimePoint> out;
  for (const auto& e : log())
    if (e.request.url.find(fragment) != std::string::npos) out.push_back(e.at);
  return out;
}

HttpResponse rate_limit_response(TimePoint now, std::int64_t search_remaining,
                                 std::int64_t core_remaining, double in) {
  const double reset = std::floor(now.time_since_epoch().count() + in);
  json body = {{"resources",
                {{"search", {{"limit", 30}, {"remaining", search_remaining}, {"reset", reset}}},
                 {"core", {{"limit", 5000}, {"remaining", core_remaining}, {"reset", reset}}}}}};
  return json_response(200, body.dump());
}

std::shared_ptr<ReplayTransport> fake_github(const std::string& query,
                                             const std::vector<FakeIssue>& issues, SortKey sort,
                                             SortOrder order) {
  auto t = std::make_shared<ReplayTransport>();
  // A full last page is followed by an empty one, as the real endpoint does.
  const std::size_t pages = issues.size() / kPageSize + 1;
  for (std::size_t p = 0; p < pages && p < 10; ++p) {
    json items = json::array();
    for (std::size_t i = p * kPageSize; i < std::min(issues.size(), (p + 1) * kPageSize); ++i)
      items.push_back(json::parse(issue_json(issues[i].ref)));
    json body = {{"total_count", issues.size()}, {"incomplete_results", false}, {"items", items}};
    t->add(search_url(kApi, query, static_cast<int>(p + 1), sort, order),
           json_response(200, body.dump()));
  }
  for (const auto& fi : issues) {
    if (fi.comments_status != 200) {
      t->add(comments_page_url(fi.ref.comments_url, 1),
             json_response(fi.comments_status, R"({"message":"Not Found"})"));
      continue;
    }
    const std::size_t cpages = fi.comments.size() / kPageSize + 1;
    for (std::size_t p = 0; p < cpages; ++p) {
      json arr = json::array();
      for (std::size_t i = p * kPageSize; i < std::min(fi.comments.size(), (p + 1) * kPageSize); ++i)
        arr.push_back(json::parse(comment_json(fi.comments[i])));
      t->add(comments_page_url(fi.ref.comments_url, static_cast<int>(p + 1)),
             json_response(200, arr.dump()));
    }
  }
  return t;
}

std::string random_markdown(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "word", "Fix", "tf.function", "I've", "don't", "the", "a", ",", ".", "!", "?", "(", ")",
      "@alice", "@bob-2", "@", "@@carol", "user@example.com", "@-x",
      "http://ex.io/a", "https://github.com/o/r/issues/1", "HTTPS://X.Y", "http://", "xhttp://q",
      "`code()`", "``a`b``", "`", "``", "```", "```\n", "\n```\n", "~~~\n", "`unterminated",
      "\"", "'", "\"quoted text\"", "'single'", "\"\"", "''", "it's", "\"open",
      "\n", "\n\n", "\r\n", " ", "  ", "\t", "> ", ">", "#123", "a/b", "_x_", "CODE", "URL",
      "SCREEN_NAME", "QUOTE", "\xc3\xa9t\xc3\xa9", "-", "--", "'@dave'", "\"@erin\""};
  std::uniform_int_distribution<std::size_t> count(0, 30);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> space(0, 2);
  std::string s;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    s += pieces[pick(rng)];
    if (space(rng) == 0) s += ' ';
  }
  return s;
}

ModelFile random_model(std::mt19937_64& rng, std::size_t classes, std::size_t vocab) {
  std::uniform_real_distribution<double> val(-20.0, 5.0);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < classes; ++c) names.push_back("class " + std::to_string(c));
  ModelFile m;
  m.taxonomy = Taxonomy(names);
  std::vector<std::size_t> perm(vocab);
  for (std::size_t i = 0; i < vocab; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < vocab; ++i) m.vocabulary.emplace("tok" + std::to_string(i), perm[i]);
  m.weights.assign(classes, std::vector<double>(vocab));
  for (auto& row : m.weights)
    for (auto& w : row) w = val(rng);
  m.bias.resize(classes);
  for (auto& b : m.bias) b = val(rng);
  m.metadata["seed"] = std::to_string(rng());
  return m;
}

ModelFile keyword_model() {
  const std::vector<std::string> words = {"fix", "thanks", "use", "reproduce"};
  ModelFile m;
  m.taxonomy = Taxonomy({"Solution Discussion", "Social Discussion", "Usage", "Bug Reproduction"});
  for (std::size_t i = 0; i < words.size(); ++i) m.vocabulary.emplace(words[i], i);
  m.weights.assign(words.size(), std::vector<double>(words.size(), -5.0));
  for (std::size_t i = 0; i < words.size(); ++i) m.weights[i][i] = -1.0;
  m.bias.assign(words.size(), 0.0);
  m.metadata["trainer"] = "hand-built";
  return m;
}

std::vector<FakeIssue> random_issues(std::mt19937_64& rng, const std::string& query,
                                     std::size_t count) {
  static const std::vector<std::string> words = {
      "fix", "thanks", "use", "reproduce", "maybe", "the", "graph", "@dev", "`x()`", "\n", "\n\n"};
  // The query itself, a case change of it, and near misses that drop or
  // replace punctuation or cut it short.
  std::string upper = query, spaced = query, squashed, cut = query.substr(0, query.size() / 2 + 1);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto& c : spaced)
    if (std::ispunct(static_cast<unsigned char>(c))) c = ' ';
  for (char c : query)
    if (!std::ispunct(static_cast<unsigned char>(c))) squashed += c;
  const std::vector<std::string> variants = {query, upper, spaced, squashed, cut, "see " + query + "("};
  std::uniform_int_distribution<int> ncomments(0, 4);
  std::uniform_int_distribution<std::size_t> nwords(1, 12);
  std::uniform_int_distribution<std::size_t> word(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> variant(0, variants.size() - 1);
  std::uniform_int_distribution<int> pct(0, 99);
  std::set<IssueId> used;
  std::uniform_int_distribution<IssueId> id(1, 9'000'000'000);

  std::vector<FakeIssue> out;
  while (out.size() < count) {
    const IssueId iid = id(rng);
    if (!used.insert(iid).second) continue;
    const int n = ncomments(rng);
    FakeIssue fi;
    fi.ref = make_issue(iid, pct(rng) < 20 ? "About " + variants[variant(rng)] : "Question",
                        pct(rng) < 20 ? variants[variant(rng)] : "", n);
    const int roll = pct(rng);
    if (n > 0 && roll < 6) fi.comments_status = roll < 3 ? 404 : 410;
    for (int c = 0; c < n; ++c) {
      std::string body;
      const std::size_t len = nwords(rng);
      for (std::size_t w = 0; w < len; ++w) {
        if (w) body += ' ';
        body += pct(rng) < 8 ? variants[variant(rng)] : words[word(rng)];
      }
      fi.comments.push_back({iid, iid * 10 + c, "user" + std::to_string(c), body,
                             "2021-05-0" + std::to_string(1 + c) + "T00:00:00Z"});
    }
    out.push_back(std::move(fi));
  }
  return out;
}

namespace {
bool word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '_';
}
bool login_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isalnum(u) || c == '-');
}
}  // namespace

bool has_scheme_url(const std::string& s) {
  std::string lower = s;
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower.find("http://") != std::string::npos || lower.find("https://") != std::string::npos;
}

bool has_mention(const std::string& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == '@' && (i == 0 || !word_char(s[i - 1])) && login_char(s[i + 1])) return true;
  return false;
}

bool has_backtick(const std::string& s) { return s.find('`') != std::string::npos; }

}  // namespace threadsift::testing
