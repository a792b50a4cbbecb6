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

#include "threadsift/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <variant>

#include "threadsift/errors.hpp"

namespace threadsift {

std::string_view to_string(StrictScope s) {
  return s == StrictScope::kIssue ? "issue" : "comment";
}

std::string_view to_string(OmitReason r) {
  switch (r) {
    case OmitReason::kNoStrictMatch: return "no_strict_match";
    case OmitReason::kNoDiscussion: return "no_discussion";
    case OmitReason::kFetchFailed: return "fetch_failed";
    case OmitReason::kCategoryFiltered: return "category_filtered";
  }
  return "unknown";
}

void validate(const QuerySpec& spec, const Taxonomy& taxonomy) {
  if (spec.query.find_first_not_of(" \t\r\n") == std::string::npos)
    throw std::invalid_argument("query must not be blank");
  if (spec.limit < 1 || spec.limit > kMaxSearchResults)
    throw std::invalid_argument("limit must be within [1, 1000]");
  if (spec.min_comments < 0) throw std::invalid_argument("min_comments must be >= 0");
  for (const auto* set : {&spec.omit_categories, &spec.require_categories,
                          &spec.forbid_categories})
    for (const auto& c : *set)
      if (!taxonomy.contains(c))
        throw std::invalid_argument("category '" + c + "' is not in the model taxonomy");
  for (const auto& c : spec.require_categories)
    if (spec.forbid_categories.count(c))
      throw std::invalid_argument("category '" + c + "' is both required and forbidden");
}

namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
  return out;
}

bool contains_folded(std::string_view haystack, const std::string& folded_needle) {
  return fold(haystack).find(folded_needle) != std::string::npos;
}

}  // namespace

StrictMatchResult strict_match(const IssueRef& issue, const std::vector<RawComment>& comments,
                               const std::string& query, StrictScope scope) {
  if (query.empty()) throw std::invalid_argument("strict_match needs a non-empty query");
  const std::string needle = fold(query);
  StrictMatchResult result;
  if (scope == StrictScope::kComment) {
    for (const auto& c : comments)
      if (contains_folded(c.body, needle)) result.kept.push_back(c);
    result.matched = !result.kept.empty();
    return result;
  }
  result.matched = contains_folded(issue.title, needle) || contains_folded(issue.body, needle) ||
                   std::any_of(comments.begin(), comments.end(), [&](const RawComment& c) {
                     return contains_folded(c.body, needle);
                   });
  if (result.matched) result.kept = comments;
  return result;
}

bool has_discussion(const IssueRef&, const std::vector<RawComment>& comments, int min_comments) {
  return static_cast<std::int64_t>(comments.size()) >= min_comments;
}

FilterResult apply_category_filters(std::vector<IssueRecords> issues, const QuerySpec& spec) {
  FilterResult out;
  for (auto& ir : issues) {
    std::set<std::string> seen;
    for (const auto& r : ir.records) seen.insert(r.prediction.category);
    const bool has_required = std::all_of(
        spec.require_categories.begin(), spec.require_categories.end(),
        [&](const std::string& c) { return seen.count(c) > 0; });
    const bool has_forbidden = std::any_of(
        spec.forbid_categories.begin(), spec.forbid_categories.end(),
        [&](const std::string& c) { return seen.count(c) > 0; });
    if (!has_required || has_forbidden) {
      out.omitted.push_back({std::move(ir.issue), OmitReason::kCategoryFiltered});
      continue;
    }
    std::erase_if(ir.records, [&](const ClassifiedRecord& r) {
      return spec.omit_categories.count(r.prediction.category) > 0;
    });
    out.surviving.push_back(std::move(ir));
  }
  return out;
}

namespace {

using IssueOutcome = std::variant<OmitReason, IssueRecords>;

IssueOutcome process_issue(const IssueRef& issue, const QuerySpec& spec, const Session& session,
                           const ModelFile& model, const PrepConfig& prep) {
  std::vector<RawComment> comments;
  try {
    comments = session.fetch_comments(issue);
  } catch (const InvalidToken&) {
    throw;
  } catch (const Error&) {
    return OmitReason::kFetchFailed;
  } catch (const std::invalid_argument&) {
    return OmitReason::kFetchFailed;  // issue without a comments URL
  }

  if (!has_discussion(issue, comments, spec.min_comments)) return OmitReason::kNoDiscussion;

  if (spec.strict_match) {
    auto sm = strict_match(issue, comments, spec.query, spec.strict_scope);
    if (!sm.matched) return OmitReason::kNoStrictMatch;
    comments = std::move(sm.kept);
  }

  IssueRecords ir{issue, {}};
  for (const auto& c : comments) {
    for (auto& [line, pred] : classify_lines(model, preprocess_comment(c, prep)))
      ir.records.push_back({issue, std::move(line), std::move(pred)});
  }
  return ir;
}

}  // namespace

RunResult run(const QuerySpec& spec, const Session& session, const ModelFile& model,
              const PrepConfig& prep) {
  validate(spec, model.taxonomy);
  const std::vector<IssueRef> issues =
      session.search_issues(spec.query, spec.limit, spec.sort, spec.order);

  std::vector<std::optional<IssueOutcome>> outcomes(issues.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= issues.size()) return;
      {
        std::lock_guard<std::mutex> lock(err_mu);
        if (first_error) return;
      }
      try {
        outcomes[i] = process_issue(issues[i], spec, session, model, prep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(session.parallelism()), issues.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RunResult result;
  std::vector<IssueRecords> classified;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    auto& outcome = *outcomes[i];
    if (auto* reason = std::get_if<OmitReason>(&outcome)) {
      result.omitted.push_back({issues[i], *reason});
    } else {
      classified.push_back(std::move(std::get<IssueRecords>(outcome)));
    }
  }

  FilterResult filtered = apply_category_filters(std::move(classified), spec);
  for (auto& o : filtered.omitted) result.omitted.push_back(std::move(o));
  for (auto& ir : filtered.surviving)
    for (auto& r : ir.records) result.records.push_back(std::move(r));

  std::sort(result.records.begin(), result.records.end(),
            [](const ClassifiedRecord& a, const ClassifiedRecord& b) {
              return std::tie(a.issue.id, a.line.comment_id, a.line.line_index) <
                     std::tie(b.issue.id, b.line.comment_id, b.line.line_index);
            });
  std::stable_sort(result.omitted.begin(), result.omitted.end(),
                   [](const OmittedIssue& a, const OmittedIssue& b) {
                     return a.issue.id < b.issue.id;
                   });

  RunSummary& s = result.summary;
  s.issues_searched = static_cast<std::int64_t>(issues.size());
  s.issues_omitted = static_cast<std::int64_t>(result.omitted.size());
  s.issues_classified = static_cast<std::int64_t>(filtered.surviving.size());
  for (const auto& name : model.taxonomy.categories()) s.category_lines.emplace_back(name, 0);
  for (const auto& r : result.records) ++s.category_lines[r.prediction.index].second;
  for (const auto& o : result.omitted) ++s.omissions[static_cast<std::size_t>(o.reason)];
  return result;
}

}  // namespace threadsift
