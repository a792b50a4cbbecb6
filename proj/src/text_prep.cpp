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

#include "threadsift/text_prep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "threadsift/errors.hpp"

namespace threadsift {

namespace detail {
extern const std::string_view kEnglishStopWordsText;
}  // namespace detail

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Bytes >= 0x80 count as word characters so UTF-8 letters behave like ASCII
// letters at mention and quote boundaries.
bool is_word(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '_';
}

bool is_login_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isalnum(u) || c == '-');
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
  return out;
}

std::set<std::string> parse_stop_list(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    words.insert(to_lower(line.substr(b, e - b + 1)));
  }
  return words;
}

/// Appends `token` so that it stands alone as a whitespace-delimited word.
void emit(std::string& out, const std::string& token, std::string_view rest) {
  if (!out.empty() && !is_space(out.back())) out.push_back(' ');
  out += token;
  if (!rest.empty() && !is_space(rest.front())) out.push_back(' ');
}

// Fence opener/closer: up to three spaces, then >= 3 of '`' or '~'.
struct Fence {
  char ch;
  std::size_t len;
};

std::optional<Fence> fence_at(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  if (i >= line.size() || (line[i] != '`' && line[i] != '~')) return std::nullopt;
  const char ch = line[i];
  std::size_t n = 0;
  while (i + n < line.size() && line[i + n] == ch) ++n;
  if (n < 3) return std::nullopt;
  return Fence{ch, n};
}

bool closes(std::string_view line, const Fence& open) {
  auto f = fence_at(line);
  if (!f || f->ch != open.ch || f->len < open.len) return false;
  const auto start = line.find(open.ch);
  const auto rest = line.substr(start + f->len);
  return std::all_of(rest.begin(), rest.end(), is_space);
}

void replace_inline_code(std::string_view line, const std::string& code, std::string& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] != '`') {
      out.push_back(line[i++]);
      continue;
    }
    std::size_t run = 0;
    while (i + run < line.size() && line[i + run] == '`') ++run;
    // Look for a closing run of exactly the same length.
    std::size_t j = i + run;
    std::size_t close_end = std::string_view::npos;
    while (j < line.size()) {
      if (line[j] != '`') {
        ++j;
        continue;
      }
      std::size_t k = 0;
      while (j + k < line.size() && line[j + k] == '`') ++k;
      if (k == run) {
        close_end = j + k;
        break;
      }
      j += k;
    }
    std::size_t end = close_end;
    if (end == std::string_view::npos) {
      // Unterminated: the snippet runs to the end of the word.
      end = i + run;
      while (end < line.size() && !is_space(line[end])) ++end;
    }
    emit(out, code, line.substr(end));
    i = end;
  }
}

std::string replace_code(std::string_view body, const std::string& code) {
  std::string out;
  out.reserve(body.size());
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t nl = body.find('\n', pos);
    const bool has_nl = nl != std::string_view::npos;
    std::string_view line = body.substr(pos, has_nl ? nl - pos : std::string_view::npos);
    std::string_view line_no_cr = line;
    if (!line_no_cr.empty() && line_no_cr.back() == '\r') line_no_cr.remove_suffix(1);

    if (auto fence = fence_at(line_no_cr)) {
      // Swallow through the closing fence, or to the end of the body.
      std::size_t scan = has_nl ? nl + 1 : body.size();
      std::size_t after = body.size();
      bool closed = false;
      while (scan < body.size()) {
        std::size_t e = body.find('\n', scan);
        std::string_view l = body.substr(scan, e == std::string_view::npos ? std::string_view::npos : e - scan);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        if (closes(l, *fence)) {
          after = e == std::string_view::npos ? body.size() : e;
          closed = true;
          break;
        }
        if (e == std::string_view::npos) break;
        scan = e + 1;
      }
      emit(out, code, {});
      pos = closed ? after : body.size();
      continue;
    }

    replace_inline_code(line, code, out);
    if (has_nl) out.push_back('\n');
    pos = has_nl ? nl + 1 : body.size();
  }
  return out;
}

bool starts_with_scheme(std::string_view s, std::size_t i, std::size_t& scheme_len) {
  auto match = [&](std::string_view prefix) {
    if (s.size() - i < prefix.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k)
      if (std::tolower(static_cast<unsigned char>(s[i + k])) != prefix[k]) return false;
    return true;
  };
  if (match("https://")) {
    scheme_len = 8;
    return true;
  }
  if (match("http://")) {
    scheme_len = 7;
    return true;
  }
  return false;
}

std::string replace_urls(std::string_view s, const std::string& url) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t scheme = 0;
    if ((s[i] == 'h' || s[i] == 'H') && starts_with_scheme(s, i, scheme)) {
      std::size_t end = i + scheme;
      while (end < s.size() && !is_space(s[end])) ++end;
      emit(out, url, s.substr(end));
      i = end;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

constexpr std::size_t kMaxLogin = 39;

std::string replace_mentions(std::string_view s, const std::string& mention) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    // Boundaries are judged on the output so that a mention glued to a
    // replaced one is still found (and a second pass finds nothing new).
    if (s[i] == '@' && (out.empty() || !is_word(out.back())) && i + 1 < s.size() &&
        is_login_char(s[i + 1])) {
      std::size_t end = i + 1;
      while (end < s.size() && end - i - 1 < kMaxLogin && is_login_char(s[end])) ++end;
      emit(out, mention, s.substr(end));
      i = end;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::string replace_quotes(std::string_view s, const std::string& quote) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if ((c == '"' || c == '\'') && (out.empty() || !is_word(out.back()))) {
      std::size_t close = std::string_view::npos;
      for (std::size_t j = i + 1; j < s.size() && s[j] != '\n'; ++j) {
        if (j > i + 1 && s[j] == c && (j + 1 == s.size() || !is_word(s[j + 1]))) {
          close = j;
          break;
        }
      }
      if (close != std::string_view::npos) {
        emit(out, quote, s.substr(close + 1));
        i = close + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

bool is_stripped_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u) && c != '/' && c != '#' && c != '_';
}

}  // namespace

const std::set<std::string>& default_stop_words() {
  static const std::set<std::string> words = [] {
    std::istringstream in{std::string(detail::kEnglishStopWordsText)};
    return parse_stop_list(in);
  }();
  return words;
}

std::set<std::string> load_stop_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read stop-word list " + path.string());
  return parse_stop_list(in);
}

PrepConfig PrepConfig::make(std::set<std::string> stop_words,
                            std::set<std::string> custom_stop_words,
                            Placeholders placeholders) {
  PrepConfig cfg;
  for (const auto& w : stop_words) cfg.stop_words_.insert(to_lower(w));
  for (const auto& w : custom_stop_words) cfg.custom_.insert(to_lower(w));
  for (const std::string* p : {&placeholders.mention, &placeholders.url,
                               &placeholders.quote, &placeholders.code}) {
    if (p->empty()) throw std::invalid_argument("placeholder must not be empty");
    for (char c : *p) {
      const auto u = static_cast<unsigned char>(c);
      if (std::islower(u) || is_space(c) || is_stripped_punct(c) || c == '@' || c == '`')
        throw std::invalid_argument("placeholder '" + *p + "' must be an uppercase word");
    }
    const std::string lowered = to_lower(*p);
    if (cfg.stop_words_.count(lowered) || cfg.custom_.count(lowered) ||
        cfg.stop_words_.count(*p) || cfg.custom_.count(*p)) {
      // Placeholders are never stop words.
      cfg.stop_words_.erase(lowered);
      cfg.custom_.erase(lowered);
    }
  }
  cfg.placeholders_ = std::move(placeholders);
  return cfg;
}

PrepConfig PrepConfig::defaults() { return make(default_stop_words()); }

bool PrepConfig::is_placeholder(std::string_view token) const {
  return token == placeholders_.mention || token == placeholders_.url ||
         token == placeholders_.quote || token == placeholders_.code;
}

bool PrepConfig::is_stop_word(std::string_view lowered) const {
  const std::string key(lowered);
  return stop_words_.count(key) > 0 || custom_.count(key) > 0;
}

std::string replace_tokens(std::string_view body, const PrepConfig& config) {
  const auto& ph = config.placeholders();
  std::string s = replace_code(body, ph.code);
  s = replace_urls(s, ph.url);
  s = replace_mentions(s, ph.mention);
  return replace_quotes(s, ph.quote);
}

std::vector<std::string> split_lines(std::string_view tokenized_body) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= tokenized_body.size()) {
    std::size_t nl = tokenized_body.find('\n', pos);
    if (nl == std::string_view::npos) nl = tokenized_body.size();
    std::string line;
    for (char c : tokenized_body.substr(pos, nl - pos))
      if (c != '\r') line.push_back(c);

    std::size_t b = 0;
    for (;;) {
      while (b < line.size() && is_space(line[b])) ++b;
      if (b < line.size() && line[b] == '>') {
        ++b;  // blockquote marker; keep the quoted text
        continue;
      }
      break;
    }
    const auto e = line.find_last_not_of(" \t\f\v");
    if (e != std::string::npos && e >= b) lines.push_back(line.substr(b, e - b + 1));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string> normalize(std::string_view line, const PrepConfig& config) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    std::string_view word = line.substr(i, j - i);
    i = j;
    while (!word.empty() && is_stripped_punct(word.front())) word.remove_prefix(1);
    while (!word.empty() && is_stripped_punct(word.back())) word.remove_suffix(1);
    if (word.empty()) continue;
    tokens.push_back(config.is_placeholder(word) ? std::string(word) : to_lower(word));
  }
  return tokens;
}

std::vector<std::string> remove_stop_words(std::vector<std::string> tokens,
                                           const PrepConfig& config) {
  std::erase_if(tokens, [&](const std::string& t) {
    return !config.is_placeholder(t) && config.is_stop_word(to_lower(t));
  });
  return tokens;
}

std::vector<ProcessedLine> preprocess_comment(const RawComment& comment,
                                              const PrepConfig& config) {
  std::vector<ProcessedLine> out;
  for (auto& raw : split_lines(replace_tokens(comment.body, config))) {
    auto tokens = remove_stop_words(normalize(raw, config), config);
    if (tokens.empty()) continue;
    ProcessedLine line;
    line.issue_id = comment.issue_id;
    line.comment_id = comment.comment_id;
    line.line_index = static_cast<int>(out.size());
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (k) line.rendered.push_back(' ');
      line.rendered += tokens[k];
    }
    line.tokens = std::move(tokens);
    line.raw_line = std::move(raw);
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace threadsift
