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

#include <curl/curl.h>

#include <mutex>

#include "threadsift/http.hpp"

namespace threadsift {
namespace {

size_t on_body(char* data, size_t size, size_t nmemb, void* user) {
  static_cast<std::string*>(user)->append(data, size * nmemb);
  return size * nmemb;
}

size_t on_header(char* data, size_t size, size_t nmemb, void* user) {
  const std::string line(data, size * nmemb);
  auto* headers = static_cast<HeaderMap*>(user);
  const auto colon = line.find(':');
  if (colon != std::string::npos) {
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\n");
      const auto e = s.find_last_not_of(" \t\r\n");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    (*headers)[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
  } else if (line.rfind("HTTP/", 0) == 0) {
    headers->clear();  // redirects or 100-continue start a fresh header block
  }
  return size * nmemb;
}

class CurlTransport final : public Transport {
 public:
  explicit CurlTransport(long timeout) : timeout_(timeout) {
    static std::once_flag once;
    std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
  }

  HttpResponse get(const HttpRequest& request) override {
    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> handle(curl_easy_init(),
                                                               &curl_easy_cleanup);
    if (!handle) throw TransportError("curl_easy_init failed");

    curl_slist* raw_list = nullptr;
    for (const auto& [k, v] : request.headers)
      raw_list = curl_slist_append(raw_list, (k + ": " + v).c_str());
    std::unique_ptr<curl_slist, decltype(&curl_slist_free_all)> list(raw_list,
                                                                     &curl_slist_free_all);

    HttpResponse resp;
    CURL* h = handle.get();
    curl_easy_setopt(h, CURLOPT_URL, request.url.c_str());
    curl_easy_setopt(h, CURLOPT_HTTPHEADER, list.get());
    curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(h, CURLOPT_TIMEOUT, timeout_);
    curl_easy_setopt(h, CURLOPT_NOSIGNAL, 1L);
    curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, &on_body);
    curl_easy_setopt(h, CURLOPT_WRITEDATA, &resp.body);
    curl_easy_setopt(h, CURLOPT_HEADERFUNCTION, &on_header);
    curl_easy_setopt(h, CURLOPT_HEADERDATA, &resp.headers);

    const CURLcode rc = curl_easy_perform(h);
    if (rc != CURLE_OK)
      throw TransportError(std::string("request to ") + request.url +
                           " failed: " + curl_easy_strerror(rc));
    long status = 0;
    curl_easy_getinfo(h, CURLINFO_RESPONSE_CODE, &status);
    resp.status = static_cast<int>(status);
    return resp;
  }

 private:
  long timeout_;
};

}  // namespace

std::shared_ptr<Transport> make_curl_transport(long timeout_seconds) {
  return std::make_shared<CurlTransport>(timeout_seconds);
}

}  // namespace threadsift
