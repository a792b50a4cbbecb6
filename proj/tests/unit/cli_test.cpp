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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "../support/test_support.hpp"
#include "threadsift/cli.hpp"
#include "threadsift/errors.hpp"
#include "threadsift/report.hpp"

using namespace threadsift;
using namespace threadsift::cli;
namespace ts = threadsift::testing;

namespace {

std::string usage_flag(const std::vector<std::string>& args, const Environment& env = {}) {
  try {
    parse_args(args, env);
  } catch (const UsageError& e) {
    return e.flag();
  }
  return "<accepted>";
}

QuerySpec scripted(const std::string& answers, std::string* transcript = nullptr) {
  std::istringstream in(answers);
  std::ostringstream out;
  auto spec = interactive_session(in, out, default_taxonomy());
  if (transcript) *transcript = out.str();
  return spec;
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args, const MainHooks& hooks = {},
               const std::string& input = "", const Environment& env = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_main(args, env, in, out, err, hooks);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_args") {
  SUBCASE("defaults") {
    const auto c = parse_args({"--query", "tf.function"}, {});
    CHECK(c.spec.query == "tf.function");
    CHECK(c.spec.limit == 100);
    CHECK(c.spec.sort == SortKey::kBestMatch);
    CHECK(c.spec.order == SortOrder::kDesc);
    CHECK(c.spec.strict_match);
    CHECK(c.spec.strict_scope == StrictScope::kIssue);
    CHECK(c.spec.min_comments == 1);
    CHECK(c.output_path == "results.csv");
    CHECK(c.omitted_path == "omitted.csv");
    CHECK(c.model_path == default_model_path());
    CHECK(c.token_source == TokenSource::kNone);
    CHECK_FALSE(c.interactive);
    CHECK_FALSE(c.include_confidence);
    CHECK_FALSE(c.fixtures_dir.has_value());
  }
  SUBCASE("every flag") {
    const auto c = parse_args(
        {"--query", "a b", "--limit", "1000", "--sort", "comments", "--order", "asc", "--model", "m.json",
         "--output", "r.csv", "--omitted-output", "o.csv", "--omit-category", "Usage", "--omit-category",
         "Motivation", "--require-category", "Workarounds", "--forbid-category", "Social Discussion",
         "--no-strict-match", "--strict-scope", "comment", "--min-comments", "0", "--token", "T",
         "--fixtures", "fx", "--confidence"},
        {{"GITHUB_TOKEN", "from-env"}});
    CHECK(c.spec.limit == 1000);
    CHECK(c.spec.sort == SortKey::kComments);
    CHECK(c.spec.order == SortOrder::kAsc);
    CHECK(c.model_path == "m.json");
    CHECK(c.output_path == "r.csv");
    CHECK(c.omitted_path == "o.csv");
    CHECK(c.spec.omit_categories == std::set<std::string>{"Usage", "Motivation"});
    CHECK(c.spec.require_categories == std::set<std::string>{"Workarounds"});
    CHECK(c.spec.forbid_categories == std::set<std::string>{"Social Discussion"});
    CHECK_FALSE(c.spec.strict_match);
    CHECK(c.spec.strict_scope == StrictScope::kComment);
    CHECK(c.spec.min_comments == 0);
    CHECK(c.token == "T");
    CHECK(c.token_source == TokenSource::kFlag);
    CHECK(c.fixtures_dir == std::filesystem::path("fx"));
    CHECK(c.include_confidence);
  }
  SUBCASE("token from the environment") {
    const auto c = parse_args({"--query", "q"}, {{"GITHUB_TOKEN", "env-tok"}});
    CHECK(c.token == "env-tok");
    CHECK(c.token_source == TokenSource::kEnvironment);
  }
  SUBCASE("pure") {
    const std::vector<std::string> a = {"--query", "q", "--limit", "7"};
    CHECK(parse_args(a, {}).spec == parse_args(a, {}).spec);
  }
  SUBCASE("errors name the flag") {
    CHECK(usage_flag({"--query", "q", "--limit", "1001"}) == "--limit");
    CHECK(usage_flag({"--query", "q", "--limit", "0"}) == "--limit");
    CHECK(usage_flag({"--query", "q", "--limit", "ten"}) == "--limit");
    CHECK(usage_flag({"--query", "q", "--sort", "stars"}) == "--sort");
    CHECK(usage_flag({"--query", "q", "--order", "up"}) == "--order");
    CHECK(usage_flag({"--query", "q", "--strict-scope", "repo"}) == "--strict-scope");
    CHECK(usage_flag({"--query", "q", "--min-comments", "-1"}) == "--min-comments");
    CHECK(usage_flag({"--limit", "5"}) == "--query");
    CHECK(usage_flag({}) == "--query");
    CHECK(usage_flag({"--interactive", "--query", "q"}) == "--interactive");
    CHECK(usage_flag({"--query", "q", "--output", "x.csv", "--omitted-output", "./x.csv"}) ==
          "--omitted-output");
    CHECK(usage_flag({"--query", "q", "--require-category", "Usage", "--forbid-category", "Usage"}) ==
          "--forbid-category");
    CHECK_THROWS_AS(parse_args({"--query", "q", "--bogus"}, {}), UsageError);
    CHECK(usage_flag({"--interactive"}) == "<accepted>");
  }
  SUBCASE("help") {
    const auto c = parse_args({"--help"}, {});
    REQUIRE(c.help_text.has_value());
    CHECK(c.help_text->find("--query") != std::string::npos);
  }
}

TEST_CASE("interactive session") {
  SUBCASE("defaults") {
    std::string transcript;
    const auto s = scripted("tf.function\n\n\n\nnone\nnone\nyes\n", &transcript);
    CHECK(s.query == "tf.function");
    CHECK(s.limit == 100);
    CHECK(s.sort == SortKey::kBestMatch);
    CHECK(s.order == SortOrder::kDesc);
    CHECK(s.omit_categories.empty());
    CHECK(s.require_categories.empty());
    CHECK(s.forbid_categories.empty());
    // Prompt order.
    const auto q = transcript.find("Query string");
    const auto l = transcript.find("Maximum number of issues");
    const auto so = transcript.find("Sort by");
    const auto o = transcript.find("Order");
    const auto om = transcript.find("Categories to omit");
    const auto f = transcript.find("Issue filters");
    const auto y = transcript.find("Run this query?");
    CHECK(q < l);
    CHECK(l < so);
    CHECK(so < o);
    CHECK(o < om);
    CHECK(om < f);
    CHECK(f < y);
    CHECK(y != std::string::npos);
  }
  SUBCASE("invalid limit re-prompts") {
    std::string transcript;
    const auto s = scripted("tf.function\n0\n10\n\n\n\n\n\n", &transcript);
    CHECK(s.limit == 10);
    CHECK(transcript.find("between 1 and 1000") != std::string::npos);
  }
  SUBCASE("choices") {
    const auto s = scripted("q\n5\n2\nasc\n11, 8\n+1 -5\ny\n");
    CHECK(s.limit == 5);
    CHECK(s.sort == SortKey::kComments);
    CHECK(s.order == SortOrder::kAsc);
    CHECK(s.omit_categories == std::set<std::string>{"Social Discussion", "Usage"});
    CHECK(s.require_categories == std::set<std::string>{"Observed Bug Behavior"});
    CHECK(s.forbid_categories == std::set<std::string>{"Solution Discussion"});
  }
  SUBCASE("bad entries re-prompt") {
    const auto s = scripted("\nq\n\nstars\nreactions\nsideways\ndesc\n99\n3\n+1 -1\n1\n+1\nmaybe\nY\n");
    CHECK(s.query == "q");
    CHECK(s.sort == SortKey::kReactions);
    CHECK(s.omit_categories == std::set<std::string>{"Motivation"});
    CHECK(s.require_categories == std::set<std::string>{"Observed Bug Behavior"});
  }
  SUBCASE("cancel") {
    CHECK_THROWS_AS(scripted("tf.function\n\n\n\n\n\nn\n"), Aborted);
    CHECK_THROWS_AS(scripted("tf.function\n\n"), Aborted);
  }
}

TEST_CASE("run_main exit codes") {
  ts::TempDir dir;
  const std::string fixtures = (ts::fixtures_dir() / "tf_function_small").string();

  SUBCASE("fixture run succeeds") {
    const auto r = invoke({"--query", "tf.function", "--fixtures", fixtures, "--output",
                           (dir / "r.csv").string(), "--omitted-output", (dir / "o.csv").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    CHECK(std::filesystem::exists(dir / "r.csv"));
    CHECK(std::filesystem::exists(dir / "o.csv"));
    CHECK(r.out.find("issues searched") != std::string::npos);
  }
  SUBCASE("interactive run") {
    const auto r = invoke({"--interactive", "--fixtures", fixtures, "--output", (dir / "r.csv").string(),
                           "--omitted-output", (dir / "o.csv").string()},
                          {}, "tf.function\n\n\n\n\n\ny\n");
    CHECK(r.code == kExitOk);
    const auto cancelled = invoke({"--interactive", "--fixtures", fixtures, "--output",
                                   (dir / "c.csv").string(), "--omitted-output", (dir / "d.csv").string()},
                                  {}, "tf.function\n\n\n\n\n\nno\n");
    CHECK(cancelled.code == kExitUsage);
    CHECK_FALSE(std::filesystem::exists(dir / "c.csv"));
  }
  SUBCASE("usage errors") {
    const auto r = invoke({"--limit", "1001", "--query", "x"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--limit") != std::string::npos);
    CHECK(r.out.empty());
    CHECK(invoke({"--query", "x", "--omit-category", "Nope", "--fixtures", fixtures}).code == kExitUsage);
  }
  SUBCASE("bad token") {
    MainHooks hooks;
    hooks.transport = ReplayTransport::load(ts::fixtures_dir() / "bad_token");
    hooks.clock = std::make_shared<SimulatedClock>();
    const auto r = invoke({"--query", "x", "--token", "garbage", "--output", (dir / "r.csv").string(),
                           "--omitted-output", (dir / "o.csv").string()},
                          hooks);
    CHECK(r.code == kExitRemote);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("query rejected") {
    auto t = std::make_shared<ReplayTransport>();
    t->add(search_url(ts::kApi, "is:nonsense", 1, SortKey::kBestMatch, SortOrder::kDesc),
           ts::json_response(422, R"({"message":"Validation Failed"})"));
    MainHooks hooks{t, nullptr};
    const auto r = invoke({"--query", "is:nonsense", "--fixtures", fixtures, "--output",
                           (dir / "r.csv").string(), "--omitted-output", (dir / "o.csv").string()},
                          hooks);
    CHECK(r.code == kExitRemote);
  }
  SUBCASE("unwritable output") {
    const auto r = invoke({"--query", "tf.function", "--fixtures", fixtures, "--output",
                           (dir / "missing" / "r.csv").string(), "--omitted-output", (dir / "o.csv").string()});
    CHECK(r.code == kExitIo);
    CHECK(r.err.find("missing") != std::string::npos);
  }
  SUBCASE("missing fixtures and model") {
    CHECK(invoke({"--query", "q", "--fixtures", (dir / "none").string()}).code == kExitIo);
    CHECK(invoke({"--query", "q", "--model", (dir / "none.json").string()}).code == kExitIo);
  }
}
