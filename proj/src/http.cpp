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

#include "threadsift/http.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace threadsift {

namespace fs = std::filesystem;
using nlohmann::json;

bool CaseInsensitiveLess::operator()(const std::string& a,
                                     const std::string& b) const {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [](unsigned char x, unsigned char y) {
        return std::tolower(x) < std::tolower(y);
      });
}

std::optional<std::string> HttpResponse::header(const std::string& name) const {
  auto it = headers.find(name);
  if (it == headers.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw FixtureNotFound("cannot read fixture file " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + p.string());
  out << data;
  if (!out) throw IoFailure("short write to " + p.string());
}

}  // namespace

std::shared_ptr<ReplayTransport> ReplayTransport::load(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw FixtureNotFound("fixture directory not found: " + dir.string());
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::is_regular_file(manifest_path, ec))
    throw FixtureNotFound("fixture manifest missing: " + manifest_path.string());

  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    throw FixtureNotFound("unreadable fixture manifest: " + std::string(e.what()));
  }
  if (!manifest.contains("entries") || !manifest["entries"].is_array())
    throw FixtureNotFound("fixture manifest has no 'entries' array");

  auto transport = std::make_shared<ReplayTransport>();
  for (const auto& entry : manifest["entries"]) {
    try {
      const auto url = entry.at("url").get<std::string>();
      const auto id = entry.at("response").get<std::string>();
      HttpResponse resp;
      resp.body = read_file(dir / "responses" / (id + ".body"));
      const auto meta = json::parse(read_file(dir / "responses" / (id + ".meta.json")));
      resp.status = meta.at("status").get<int>();
      if (meta.contains("headers")) {
        for (const auto& [k, v] : meta["headers"].items())
          resp.headers[k] = v.get<std::string>();
      }
      transport->add(url, std::move(resp));
    } catch (const json::exception& e) {
      throw FixtureNotFound("malformed fixture entry: " + std::string(e.what()));
    }
  }
  return transport;
}

void ReplayTransport::add(std::string url, HttpResponse response) {
  std::lock_guard<std::mutex> lock(mu_);
  slots_[std::move(url)].responses.push_back(std::move(response));
}

HttpResponse ReplayTransport::get(const HttpRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  log_.push_back(request.url);
  auto it = slots_.find(request.url);
  if (it == slots_.end() || it->second.responses.empty())
    throw NetworkFailure("no recorded response for " + request.url);
  Slot& slot = it->second;
  const std::size_t idx = std::min(slot.next, slot.responses.size() - 1);
  if (slot.next < slot.responses.size()) ++slot.next;
  return slot.responses[idx];
}

std::vector<std::string> ReplayTransport::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

void write_fixture(const fs::path& dir, const std::vector<RecordedExchange>& exchanges) {
  std::error_code ec;
  fs::create_directories(dir / "responses", ec);
  if (ec) throw IoFailure("cannot create fixture directory " + dir.string());

  json entries = json::array();
  int n = 0;
  for (const auto& ex : exchanges) {
    char id[16];
    std::snprintf(id, sizeof id, "%04d", ++n);
    entries.push_back({{"url", ex.url}, {"response", id}});
    json headers = json::object();
    for (const auto& [k, v] : ex.response.headers) headers[k] = v;
    const json meta = {{"status", ex.response.status}, {"headers", headers}};
    write_file(dir / "responses" / (std::string(id) + ".body"), ex.response.body);
    write_file(dir / "responses" / (std::string(id) + ".meta.json"), meta.dump(2) + "\n");
  }
  const json manifest = {{"format_version", 1}, {"entries", entries}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string url_encode(const std::string& s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace threadsift
