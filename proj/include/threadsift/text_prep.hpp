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

#ifndef THREADSIFT_TEXT_PREP_HPP_
#define THREADSIFT_TEXT_PREP_HPP_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "threadsift/github_client.hpp"

namespace threadsift {

/// Stand-ins for spans removed by replace_tokens.
struct Placeholders {
  std::string mention = "SCREEN_NAME";
  std::string url = "URL";
  std::string quote = "QUOTE";
  std::string code = "CODE";
};

/// Immutable preprocessing settings. Construct through PrepConfig::make, which
/// enforces the placeholder rules (uppercase, non-empty, not a stop word).
class PrepConfig {
 public:
  static PrepConfig make(std::set<std::string> stop_words,
                         std::set<std::string> custom_stop_words = {},
                         Placeholders placeholders = {});

  /// Vendored English stop list, no custom words, default placeholders.
  static PrepConfig defaults();

  const std::set<std::string>& stop_words() const { return stop_words_; }
  const std::set<std::string>& custom_stop_words() const { return custom_; }
  const Placeholders& placeholders() const { return placeholders_; }

  bool is_placeholder(std::string_view token) const;
  bool is_stop_word(std::string_view lowered) const;

 private:
  PrepConfig() = default;
  std::set<std::string> stop_words_;
  std::set<std::string> custom_;
  Placeholders placeholders_;
};

/// Reads a stop list: one word per line, '#' starts a comment, blank lines
/// ignored, words lowercased.
std::set<std::string> load_stop_words(const std::filesystem::path& path);

/// The built-in English stop list.
const std::set<std::string>& default_stop_words();

struct ProcessedLine {
  IssueId issue_id = 0;
  CommentId comment_id = 0;
  int line_index = 0;
  std::vector<std::string> tokens;
  std::string rendered;
  std::string raw_line;

  bool operator==(const ProcessedLine&) const = default;
};

/// Replaces code (fenced blocks, inline spans), scheme URLs, @mentions and
/// quoted spans with placeholders, in that precedence. Idempotent.
std::string replace_tokens(std::string_view body, const PrepConfig& config);

/// Newline split; drops CR, blockquote markers, and blank lines.
std::vector<std::string> split_lines(std::string_view tokenized_body);

/// Whitespace split, edge punctuation stripping, lowercasing of everything
/// except placeholders.
std::vector<std::string> normalize(std::string_view line, const PrepConfig& config);

std::vector<std::string> remove_stop_words(std::vector<std::string> tokens,
                                           const PrepConfig& config);

/// Full chain for one comment. Lines with no surviving tokens are dropped and
/// the rest are numbered 0..n-1.
std::vector<ProcessedLine> preprocess_comment(const RawComment& comment,
                                              const PrepConfig& config);

}  // namespace threadsift

#endif  // THREADSIFT_TEXT_PREP_HPP_
