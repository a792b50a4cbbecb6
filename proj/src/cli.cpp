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

#include "threadsift/cli.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "threadsift/errors.hpp"
#include "threadsift/github_client.hpp"
#include "threadsift/report.hpp"

#ifndef THREADSIFT_DEFAULT_MODEL
#define THREADSIFT_DEFAULT_MODEL "baseline_model.json"
#endif

namespace threadsift::cli {

namespace {

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::filesystem::path default_model_path() { return THREADSIFT_DEFAULT_MODEL; }

CliConfig parse_args(const std::vector<std::string>& args, const Environment& env) {
  CLI::App app{"Search GitHub issues, classify their comment lines, write CSV reports.",
               "threadsift"};
  app.set_help_flag("-h,--help", "Show this help and exit");

  std::optional<std::string> query, limit, sort, order, strict_scope, min_comments, token,
      model, output, omitted_output, fixtures;
  std::vector<std::string> omit, require, forbid;
  bool no_strict = false, interactive = false, confidence = false;

  app.add_option("--query", query, "Search string; punctuation is kept for strict matching");
  app.add_option("--limit", limit, "Maximum issues to retrieve, 1..1000 (default 100)");
  app.add_option("--sort", sort,
                 "best-match | comments | created | updated | reactions (default best-match)");
  app.add_option("--order", order, "asc | desc (default desc)");
  app.add_option("--model", model, "Model file (default: bundled baseline)");
  app.add_option("--output", output, "Results CSV (default results.csv)");
  app.add_option("--omitted-output", omitted_output, "Omitted-issues CSV (default omitted.csv)");
  app.add_option("--omit-category", omit, "Drop rows of this category (repeatable)");
  app.add_option("--require-category", require,
                 "Keep only issues with a line of this category (repeatable)");
  app.add_option("--forbid-category", forbid,
                 "Drop issues with any line of this category (repeatable)");
  app.add_flag("--no-strict-match", no_strict, "Disable the verbatim query refilter");
  app.add_option("--strict-scope", strict_scope, "issue | comment (default issue)");
  app.add_option("--min-comments", min_comments, "Minimum comments for an issue (default 1)");
  app.add_option("--token", token, "GitHub token (default: $GITHUB_TOKEN)");
  app.add_option("--fixtures", fixtures, "Replay recorded responses from this directory");
  app.add_flag("--interactive", interactive, "Build the query through prompts");
  app.add_flag("--confidence", confidence, "Add a confidence column to the results");
  for (auto* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::Throw);
  for (const char* name : {"--omit-category", "--require-category", "--forbid-category"})
    app.get_option(name)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->allow_extra_args(false);

  CliConfig cfg;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError("", e.what());
  }

  cfg.interactive = interactive;
  cfg.include_confidence = confidence;

  const bool query_flags = query || limit || sort || order || !omit.empty() ||
                           !require.empty() || !forbid.empty();
  if (interactive && query_flags)
    throw UsageError("--interactive",
                     "cannot be combined with --query/--limit/--sort/--order or category flags");
  if (!interactive && (!query || trim(*query).empty()))
    throw UsageError("--query", "a non-empty query is required unless --interactive is given");

  QuerySpec& spec = cfg.spec;
  if (query) spec.query = *query;
  if (limit) {
    auto v = parse_int(*limit);
    if (!v || *v < 1 || *v > kMaxSearchResults)
      throw UsageError("--limit", "must be an integer between 1 and 1000, got '" + *limit + "'");
    spec.limit = *v;
  }
  if (sort) {
    auto k = parse_sort_key(*sort);
    if (!k) throw UsageError("--sort", "unknown sort key '" + *sort + "'");
    spec.sort = *k;
  }
  if (order) {
    auto o = parse_sort_order(*order);
    if (!o) throw UsageError("--order", "must be asc or desc, got '" + *order + "'");
    spec.order = *o;
  }
  spec.strict_match = !no_strict;
  if (strict_scope) {
    if (*strict_scope == "issue") spec.strict_scope = StrictScope::kIssue;
    else if (*strict_scope == "comment") spec.strict_scope = StrictScope::kComment;
    else throw UsageError("--strict-scope", "must be issue or comment, got '" + *strict_scope + "'");
  }
  if (min_comments) {
    auto v = parse_int(*min_comments);
    if (!v || *v < 0)
      throw UsageError("--min-comments", "must be a non-negative integer, got '" + *min_comments + "'");
    spec.min_comments = *v;
  }
  spec.omit_categories.insert(omit.begin(), omit.end());
  spec.require_categories.insert(require.begin(), require.end());
  spec.forbid_categories.insert(forbid.begin(), forbid.end());
  for (const auto& c : spec.require_categories)
    if (spec.forbid_categories.count(c))
      throw UsageError("--forbid-category", "'" + c + "' is also given to --require-category");

  if (token) {
    cfg.token = *token;
    cfg.token_source = TokenSource::kFlag;
  } else if (auto it = env.find("GITHUB_TOKEN"); it != env.end() && !it->second.empty()) {
    cfg.token = it->second;
    cfg.token_source = TokenSource::kEnvironment;
  }

  cfg.model_path = model ? std::filesystem::path(*model) : default_model_path();
  if (output) cfg.output_path = *output;
  if (omitted_output) cfg.omitted_path = *omitted_output;
  if (cfg.output_path.lexically_normal() == cfg.omitted_path.lexically_normal())
    throw UsageError("--omitted-output", "must differ from --output");
  if (fixtures) cfg.fixtures_dir = *fixtures;
  return cfg;
}

namespace {

class Prompter {
 public:
  Prompter(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string ask(const std::string& prompt) {
    out_ << prompt << std::flush;
    std::string line;
    if (!std::getline(in_, line)) {
      out_ << "\n";
      throw Aborted("input ended before the query was confirmed");
    }
    return trim(line);
  }

  void say(const std::string& text) { out_ << text << "\n"; }

 private:
  std::istream& in_;
  std::ostream& out_;
};

bool is_none(const std::string& answer) {
  const std::string a = lower(answer);
  return a.empty() || a == "none" || a == "-";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::optional<std::string> category_by_number(const std::string& s, const Taxonomy& taxonomy) {
  auto n = parse_int(s);
  if (!n || *n < 1 || static_cast<std::size_t>(*n) > taxonomy.size()) return std::nullopt;
  return taxonomy[static_cast<std::size_t>(*n - 1)];
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ", ") + i;
  return out.empty() ? "(none)" : out;
}

}  // namespace

QuerySpec interactive_session(std::istream& in, std::ostream& out, const Taxonomy& taxonomy,
                              const QuerySpec& base) {
  Prompter p(in, out);
  QuerySpec spec = base;
  spec.omit_categories.clear();
  spec.require_categories.clear();
  spec.forbid_categories.clear();

  for (;;) {
    spec.query = p.ask("Query string: ");
    if (!spec.query.empty()) break;
    p.say("  The query must not be empty.");
  }

  for (;;) {
    const std::string a = p.ask("Maximum number of issues (1-1000) [100]: ");
    if (a.empty()) {
      spec.limit = 100;
      break;
    }
    auto v = parse_int(a);
    if (v && *v >= 1 && *v <= kMaxSearchResults) {
      spec.limit = *v;
      break;
    }
    p.say("  The limit must be a whole number between 1 and 1000.");
  }

  const std::vector<SortKey> keys = {SortKey::kBestMatch, SortKey::kComments, SortKey::kCreated,
                                     SortKey::kUpdated, SortKey::kReactions};
  p.say("Sort criteria:");
  for (std::size_t i = 0; i < keys.size(); ++i)
    p.say("  " + std::to_string(i + 1) + ". " + std::string(to_string(keys[i])));
  for (;;) {
    const std::string a = lower(p.ask("Sort by [best-match]: "));
    if (a.empty()) {
      spec.sort = SortKey::kBestMatch;
      break;
    }
    if (auto n = parse_int(a); n && *n >= 1 && static_cast<std::size_t>(*n) <= keys.size()) {
      spec.sort = keys[static_cast<std::size_t>(*n - 1)];
      break;
    }
    if (auto k = parse_sort_key(a)) {
      spec.sort = *k;
      break;
    }
    p.say("  Choose a number from the menu or a sort name.");
  }

  for (;;) {
    const std::string a = lower(p.ask("Order (asc/desc) [desc]: "));
    if (a.empty()) {
      spec.order = SortOrder::kDesc;
      break;
    }
    if (auto o = parse_sort_order(a)) {
      spec.order = *o;
      break;
    }
    p.say("  Answer asc or desc.");
  }

  p.say("Categories:");
  for (std::size_t i = 0; i < taxonomy.size(); ++i)
    p.say("  " + std::to_string(i + 1) + ". " + taxonomy[i]);

  for (;;) {
    const std::string a =
        p.ask("Categories to omit from the output (numbers, comma-separated) [none]: ");
    if (is_none(a)) break;
    std::set<std::string> picked;
    bool ok = true;
    for (const auto& part : split_list(a)) {
      auto c = category_by_number(part, taxonomy);
      if (!c) {
        p.say("  '" + part + "' is not a category number.");
        ok = false;
        break;
      }
      picked.insert(*c);
    }
    if (ok) {
      spec.omit_categories = std::move(picked);
      break;
    }
  }

  for (;;) {
    const std::string a = p.ask(
        "Issue filters: +N keeps only issues with category N, -N drops issues with it "
        "(comma-separated) [none]: ");
    if (is_none(a)) break;
    std::set<std::string> require, forbid;
    std::string problem;
    for (const auto& part : split_list(a)) {
      if (part.size() < 2 || (part[0] != '+' && part[0] != '-')) {
        problem = "'" + part + "' must look like +N or -N.";
        break;
      }
      auto c = category_by_number(part.substr(1), taxonomy);
      if (!c) {
        problem = "'" + part + "' does not name a category number.";
        break;
      }
      (part[0] == '+' ? require : forbid).insert(*c);
    }
    if (problem.empty())
      for (const auto& c : require)
        if (forbid.count(c)) problem = "'" + c + "' cannot be both required and forbidden.";
    if (problem.empty()) {
      spec.require_categories = std::move(require);
      spec.forbid_categories = std::move(forbid);
      break;
    }
    p.say("  " + problem);
  }

  p.say("");
  p.say("Query:      " + spec.query);
  p.say("Limit:      " + std::to_string(spec.limit));
  p.say("Sort:       " + std::string(to_string(spec.sort)) + " " + std::string(to_string(spec.order)));
  p.say("Omit:       " + join(spec.omit_categories));
  p.say("Require:    " + join(spec.require_categories));
  p.say("Forbid:     " + join(spec.forbid_categories));
  for (;;) {
    const std::string a = lower(p.ask("Run this query? [Y/n]: "));
    if (a.empty() || a == "y" || a == "yes") return spec;
    if (a == "n" || a == "no") throw Aborted("query cancelled");
    p.say("  Answer yes or no.");
  }
}

namespace {

std::string flag_for_category(const QuerySpec& spec, const std::string& category) {
  if (spec.require_categories.count(category)) return "--require-category";
  if (spec.forbid_categories.count(category)) return "--forbid-category";
  return "--omit-category";
}

void check_output_dir(const std::filesystem::path& p, const char* flag) {
  const auto parent = p.parent_path();
  std::error_code ec;
  if (!parent.empty() && !std::filesystem::is_directory(parent, ec))
    throw IoFailure(std::string(flag) + ": directory " + parent.string() + " does not exist");
}

}  // namespace

int run_main(const std::vector<std::string>& args, const Environment& env, std::istream& in,
             std::ostream& out, std::ostream& err, const MainHooks& hooks) {
  try {
    CliConfig cfg = parse_args(args, env);
    if (cfg.help_text) {
      out << *cfg.help_text;
      return kExitOk;
    }

    const ModelFile model = load_model(cfg.model_path);
    if (cfg.interactive) cfg.spec = interactive_session(in, out, model.taxonomy, cfg.spec);
    for (const auto* set : {&cfg.spec.omit_categories, &cfg.spec.require_categories,
                            &cfg.spec.forbid_categories})
      for (const auto& c : *set)
        if (!model.taxonomy.contains(c))
          throw UsageError(flag_for_category(cfg.spec, c),
                           "category '" + c + "' is not in the model taxonomy");
    check_output_dir(cfg.output_path, "--output");
    check_output_dir(cfg.omitted_path, "--omitted-output");

    SessionOptions opts;
    opts.token = cfg.token;
    if (cfg.fixtures_dir) {
      opts.mode = SessionMode::kReplay;
      opts.fixture_dir = *cfg.fixtures_dir;
    }
    opts.transport = hooks.transport;
    opts.clock = hooks.clock;
    const Session session = Session::open(opts);

    const RunResult result = run(cfg.spec, session, model, PrepConfig::defaults());
    const std::size_t rows = write_results(result.records, cfg.output_path, cfg.include_confidence);
    const std::size_t omitted = write_omitted(result.omitted, cfg.omitted_path);

    out << "Wrote " << rows << " classified lines to " << cfg.output_path.string() << "\n";
    out << "Wrote " << omitted << " omitted issues to " << cfg.omitted_path.string() << "\n";
    out << render_summary(result.summary);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "threadsift: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Aborted& e) {
    err << "threadsift: aborted: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidToken& e) {
    err << "threadsift: " << e.what() << "\n";
    return kExitRemote;
  } catch (const QueryRejected& e) {
    err << "threadsift: " << e.what() << "\n";
    return kExitRemote;
  } catch (const RateLimited& e) {
    err << "threadsift: " << e.what() << "\n";
    return kExitRemote;
  } catch (const AccessDenied& e) {
    err << "threadsift: " << e.what() << "\n";
    return kExitRemote;
  } catch (const Error& e) {
    // IoFailure, FixtureNotFound, NetworkFailure, model schema problems.
    err << "threadsift: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "threadsift: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace threadsift::cli
