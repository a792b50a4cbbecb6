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

#ifndef THREADSIFT_CLI_HPP_
#define THREADSIFT_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "threadsift/classifier.hpp"
#include "threadsift/clock.hpp"
#include "threadsift/http.hpp"
#include "threadsift/pipeline.hpp"

namespace threadsift::cli {

enum class TokenSource { kFlag, kEnvironment, kNone };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRemote = 2;  // authentication or query rejection
inline constexpr int kExitIo = 3;

using Environment = std::map<std::string, std::string>;

struct CliConfig {
  QuerySpec spec;
  TokenSource token_source = TokenSource::kNone;
  std::optional<std::string> token;
  std::filesystem::path model_path;
  std::filesystem::path output_path = "results.csv";
  std::filesystem::path omitted_path = "omitted.csv";
  std::optional<std::filesystem::path> fixtures_dir;
  bool interactive = false;
  bool include_confidence = false;
  /// Set when --help was requested; nothing else is meaningful then.
  std::optional<std::string> help_text;
};

/// Path of the bundled baseline model.
std::filesystem::path default_model_path();

/// Pure function of (args, env). `args` excludes the program name.
/// Throws UsageError naming the offending flag.
CliConfig parse_args(const std::vector<std::string>& args, const Environment& env);

/// Prompt loop that builds a QuerySpec on a line-oriented channel. Fields not
/// prompted for (strict matching, min comments) are taken from `base`.
/// Throws Aborted on cancellation or end of input.
QuerySpec interactive_session(std::istream& in, std::ostream& out, const Taxonomy& taxonomy,
                              const QuerySpec& base = {});

/// Test seams for main().
struct MainHooks {
  std::shared_ptr<Transport> transport;
  std::shared_ptr<Clock> clock;
};

/// Full command: returns the process exit code. Diagnostics go to `err`,
/// the run summary and progress lines to `out`.
int run_main(const std::vector<std::string>& args, const Environment& env, std::istream& in,
             std::ostream& out, std::ostream& err, const MainHooks& hooks = {});

}  // namespace threadsift::cli

#endif  // THREADSIFT_CLI_HPP_
