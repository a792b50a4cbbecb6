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

#ifndef THREADSIFT_REPORT_HPP_
#define THREADSIFT_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "threadsift/pipeline.hpp"

namespace threadsift {

/// Header of the results file. `confidence` is appended when requested.
inline constexpr const char* kResultsHeader =
    "id,html_url,api_url,comment_id,line_index,comment_line,category";
inline constexpr const char* kOmittedHeader = "id,html_url,api_url,reason";

std::string format_results(const std::vector<ClassifiedRecord>& records,
                           bool include_confidence);
std::string format_omitted(const std::vector<OmittedIssue>& omitted);

/// Writes the results CSV and returns the number of data rows.
/// Throws IoFailure when the file cannot be written.
std::size_t write_results(const std::vector<ClassifiedRecord>& records,
                          const std::filesystem::path& path, bool include_confidence);

std::size_t write_omitted(const std::vector<OmittedIssue>& omitted,
                          const std::filesystem::path& path);

std::string render_summary(const RunSummary& summary);

}  // namespace threadsift

#endif  // THREADSIFT_REPORT_HPP_
