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

#include "threadsift/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "threadsift/csv.hpp"
#include "threadsift/errors.hpp"

namespace threadsift {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoFailure("write to " + path.string() + " failed");
}

std::string four_places(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string format_results(const std::vector<ClassifiedRecord>& records,
                           bool include_confidence) {
  std::string out = kResultsHeader;
  if (include_confidence) out += ",confidence";
  out.push_back('\n');
  for (const auto& r : records) {
    csv::Row row = {std::to_string(r.issue.id),
                    r.issue.html_url,
                    r.issue.api_url,
                    std::to_string(r.line.comment_id),
                    std::to_string(r.line.line_index),
                    r.line.rendered,
                    r.prediction.category};
    if (include_confidence) row.push_back(four_places(r.prediction.confidence));
    out += csv::format_row(row);
  }
  return out;
}

std::string format_omitted(const std::vector<OmittedIssue>& omitted) {
  std::string out = kOmittedHeader;
  out.push_back('\n');
  for (const auto& o : omitted)
    out += csv::format_row({std::to_string(o.issue.id), o.issue.html_url, o.issue.api_url,
                            std::string(to_string(o.reason))});
  return out;
}

std::size_t write_results(const std::vector<ClassifiedRecord>& records,
                          const std::filesystem::path& path, bool include_confidence) {
  write_text(path, format_results(records, include_confidence));
  return records.size();
}

std::size_t write_omitted(const std::vector<OmittedIssue>& omitted,
                          const std::filesystem::path& path) {
  write_text(path, format_omitted(omitted));
  return omitted.size();
}

std::string render_summary(const RunSummary& summary) {
  std::size_t width = std::string("issues classified").size();
  for (const auto& [name, _] : summary.category_lines) width = std::max(width, name.size());
  for (auto r : kAllOmitReasons) width = std::max(width, to_string(r).size());

  std::string out;
  auto line = [&](const std::string& label, std::int64_t value) {
    out += "  " + label + std::string(width - label.size() + 2, ' ') + std::to_string(value) + "\n";
  };

  out += "Issues\n";
  line("issues searched", summary.issues_searched);
  line("issues classified", summary.issues_classified);
  line("issues omitted", summary.issues_omitted);
  out += "Lines per category\n";
  for (const auto& [name, count] : summary.category_lines) line(name, count);
  out += "Omissions per reason\n";
  for (auto r : kAllOmitReasons) line(std::string(to_string(r)), summary.omitted_for(r));
  return out;
}

}  // namespace threadsift
