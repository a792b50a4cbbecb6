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

#ifndef THREADSIFT_PIPELINE_HPP_
#define THREADSIFT_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threadsift/classifier.hpp"
#include "threadsift/github_client.hpp"
#include "threadsift/text_prep.hpp"

namespace threadsift {

enum class StrictScope { kIssue, kComment };

std::string_view to_string(StrictScope s);

/// A complete user request.
struct QuerySpec {
  std::string query;
  int limit = 100;
  SortKey sort = SortKey::kBestMatch;
  SortOrder order = SortOrder::kDesc;
  bool strict_match = true;
  StrictScope strict_scope = StrictScope::kIssue;
  std::set<std::string> omit_categories;
  std::set<std::string> require_categories;
  std::set<std::string> forbid_categories;
  int min_comments = 1;

  bool operator==(const QuerySpec&) const = default;
};

/// Throws std::invalid_argument describing the first broken constraint:
/// blank query, limit outside [1, 1000], negative min_comments, a category
/// unknown to `taxonomy`, or a category both required and forbidden.
void validate(const QuerySpec& spec, const Taxonomy& taxonomy);

/// Why an issue produced no output. Declaration order is the reporting order.
enum class OmitReason { kNoStrictMatch, kNoDiscussion, kFetchFailed, kCategoryFiltered };
inline constexpr std::array<OmitReason, 4> kAllOmitReasons = {
    OmitReason::kNoStrictMatch, OmitReason::kNoDiscussion, OmitReason::kFetchFailed,
    OmitReason::kCategoryFiltered};

std::string_view to_string(OmitReason r);

struct OmittedIssue {
  IssueRef issue;
  OmitReason reason;

  bool operator==(const OmittedIssue&) const = default;
};

struct ClassifiedRecord {
  IssueRef issue;
  ProcessedLine line;
  Prediction prediction;

  bool operator==(const ClassifiedRecord&) const = default;
};

struct RunSummary {
  std::int64_t issues_searched = 0;
  std::int64_t issues_classified = 0;
  std::int64_t issues_omitted = 0;
  /// Emitted rows per category, in taxonomy order.
  std::vector<std::pair<std::string, std::int64_t>> category_lines;
  /// Indexed by OmitReason.
  std::array<std::int64_t, 4> omissions{};

  std::int64_t omitted_for(OmitReason r) const {
    return omissions[static_cast<std::size_t>(r)];
  }
};

struct StrictMatchResult {
  std::vector<RawComment> kept;
  bool matched = false;
};

/// Verbatim, case-insensitive substring refilter. Issue scope keeps every
/// comment of a matching issue (title and body count as matches); comment
/// scope keeps only matching comments.
StrictMatchResult strict_match(const IssueRef& issue, const std::vector<RawComment>& comments,
                               const std::string& query, StrictScope scope);

bool has_discussion(const IssueRef& issue, const std::vector<RawComment>& comments,
                    int min_comments);

/// Classified rows of one issue.
struct IssueRecords {
  IssueRef issue;
  std::vector<ClassifiedRecord> records;
};

struct FilterResult {
  std::vector<IssueRecords> surviving;
  std::vector<OmittedIssue> omitted;
};

/// Issue-level require/forbid pass, then row-level omission on survivors.
FilterResult apply_category_filters(std::vector<IssueRecords> issues, const QuerySpec& spec);

struct RunResult {
  std::vector<ClassifiedRecord> records;  // sorted by (issue id, comment id, line index)
  std::vector<OmittedIssue> omitted;      // sorted by issue id
  RunSummary summary;
};

/// search -> fetch -> discussion check -> strict match -> preprocess ->
/// classify -> category filters. Comment fetches run on up to
/// session.parallelism() threads; output order does not depend on it.
/// Per-issue fetch failures become fetch_failed omissions; InvalidToken and
/// search errors propagate.
RunResult run(const QuerySpec& spec, const Session& session, const ModelFile& model,
              const PrepConfig& prep);

}  // namespace threadsift

#endif  // THREADSIFT_PIPELINE_HPP_
