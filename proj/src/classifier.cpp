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

#include "threadsift/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "threadsift/csv.hpp"
#include "threadsift/errors.hpp"

namespace threadsift {

using nlohmann::json;

namespace {

std::string fold(const std::string& s) {
  std::string out = s;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string render_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(v);
}

double number_at(const json& j, const char* field) {
  if (!j.is_number()) throw SchemaViolation(field, "expected a finite number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaViolation(field, "non-finite number");
  return v;
}

}  // namespace

Taxonomy::Taxonomy(std::vector<std::string> categories) : categories_(std::move(categories)) {
  std::set<std::string> seen;
  for (const auto& c : categories_) {
    if (c.empty()) throw std::invalid_argument("category names must not be empty");
    if (!seen.insert(fold(c)).second)
      throw std::invalid_argument("duplicate category name '" + c + "'");
  }
}

std::optional<std::size_t> Taxonomy::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < categories_.size(); ++i)
    if (categories_[i] == name) return i;
  return std::nullopt;
}

const Taxonomy& default_taxonomy() {
  static const Taxonomy t({
      "Observed Bug Behavior",
      "Workarounds",
      "Motivation",
      "Potential New Issues & Requests",
      "Solution Discussion",
      "Action on Issue",
      "Contribution & Commitment",
      "Usage",
      "Bug Reproduction",
      "Expected Behavior",
      "Social Discussion",
  });
  return t;
}

void validate(const ModelFile& model) {
  if (model.format_version != kModelFormatVersion)
    throw UnsupportedVersion("unsupported model format_version " +
                             std::to_string(model.format_version));
  const std::size_t classes = model.taxonomy.size();
  const std::size_t vocab = model.vocabulary.size();
  if (classes == 0) throw SchemaViolation("taxonomy", "at least one category required");

  std::vector<bool> used(vocab, false);
  for (const auto& [token, idx] : model.vocabulary) {
    if (idx >= vocab)
      throw SchemaViolation("vocabulary", "index " + std::to_string(idx) + " of '" + token +
                                              "' outside [0, " + std::to_string(vocab) + ")");
    if (used[idx])
      throw SchemaViolation("vocabulary", "index " + std::to_string(idx) + " used twice");
    used[idx] = true;
  }
  if (model.weights.size() != classes)
    throw SchemaViolation("weights", "expected " + std::to_string(classes) + " rows, found " +
                                         std::to_string(model.weights.size()));
  for (const auto& row : model.weights) {
    if (row.size() != vocab)
      throw SchemaViolation("weights", "row length " + std::to_string(row.size()) +
                                           " does not match vocabulary size " +
                                           std::to_string(vocab));
    for (double w : row)
      if (!std::isfinite(w)) throw SchemaViolation("weights", "non-finite weight");
  }
  if (model.bias.size() != classes)
    throw SchemaViolation("bias", "expected " + std::to_string(classes) + " entries, found " +
                                      std::to_string(model.bias.size()));
  for (double b : model.bias)
    if (!std::isfinite(b)) throw SchemaViolation("bias", "non-finite bias");
}

std::string serialize_model(const ModelFile& model) {
  validate(model);
  json doc;
  doc["format_version"] = model.format_version;
  doc["taxonomy"] = model.taxonomy.categories();
  json vocab = json::object();
  for (const auto& [token, idx] : model.vocabulary) vocab[token] = idx;
  doc["vocabulary"] = std::move(vocab);
  doc["weights"] = model.weights;
  doc["bias"] = model.bias;
  json meta = json::object();
  for (const auto& [k, v] : model.metadata) meta[k] = v;
  doc["metadata"] = std::move(meta);
  return doc.dump(1) + "\n";
}

ModelFile parse_model(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw SchemaViolation("document", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaViolation("document", "top level must be an object");

  static const std::set<std::string> kFields = {"format_version", "taxonomy", "vocabulary",
                                                "weights",        "bias",     "metadata"};
  for (const auto& [key, _] : doc.items())
    if (!kFields.count(key)) throw SchemaViolation(key, "unknown top-level field");
  for (const auto& f : kFields)
    if (!doc.contains(f)) throw SchemaViolation(f, "missing");

  ModelFile m;
  const json& version = doc["format_version"];
  if (!version.is_number_integer())
    throw SchemaViolation("format_version", "must be an integer");
  m.format_version = version.get<int>();
  if (m.format_version != kModelFormatVersion)
    throw UnsupportedVersion("unsupported model format_version " +
                             std::to_string(m.format_version));

  const json& tax = doc["taxonomy"];
  if (!tax.is_array()) throw SchemaViolation("taxonomy", "must be an array of strings");
  std::vector<std::string> names;
  for (const auto& n : tax) {
    if (!n.is_string()) throw SchemaViolation("taxonomy", "must be an array of strings");
    names.push_back(n.get<std::string>());
  }
  try {
    m.taxonomy = Taxonomy(std::move(names));
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation("taxonomy", e.what());
  }

  const json& vocab = doc["vocabulary"];
  if (!vocab.is_object()) throw SchemaViolation("vocabulary", "must be an object");
  for (const auto& [token, idx] : vocab.items()) {
    if (!idx.is_number_unsigned())
      throw SchemaViolation("vocabulary", "index of '" + token + "' must be a non-negative integer");
    m.vocabulary.emplace(token, idx.get<std::size_t>());
  }

  const json& weights = doc["weights"];
  if (!weights.is_array()) throw SchemaViolation("weights", "must be an array of arrays");
  for (const auto& row : weights) {
    if (!row.is_array()) throw SchemaViolation("weights", "must be an array of arrays");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& w : row) r.push_back(number_at(w, "weights"));
    m.weights.push_back(std::move(r));
  }

  const json& bias = doc["bias"];
  if (!bias.is_array()) throw SchemaViolation("bias", "must be an array");
  for (const auto& b : bias) m.bias.push_back(number_at(b, "bias"));

  const json& meta = doc["metadata"];
  if (!meta.is_object()) throw SchemaViolation("metadata", "must be an object");
  for (const auto& [k, v] : meta.items()) {
    if (!v.is_string()) throw SchemaViolation("metadata", "values must be strings");
    m.metadata.emplace(k, v.get<std::string>());
  }

  validate(m);
  return m;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read model file " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_model(text);
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
  const std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write model file " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoFailure("short write to model file " + path.string());
}

std::vector<double> softmax(std::span<const double> scores) {
  std::vector<double> p(scores.size());
  if (scores.empty()) return p;
  const double top = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(scores[i] - top);
    sum += p[i];
  }
  for (auto& v : p) v /= sum;
  return p;
}

std::vector<double> Prediction::probabilities() const { return softmax(scores); }

Prediction predict_line(const ModelFile& model, std::span<const std::string> tokens) {
  Prediction p;
  p.scores = model.bias;
  for (const auto& t : tokens) {
    auto it = model.vocabulary.find(t);
    if (it == model.vocabulary.end()) continue;
    for (std::size_t c = 0; c < p.scores.size(); ++c) p.scores[c] += model.weights[c][it->second];
  }
  // Scores within rounding noise of the maximum count as tied; the lowest
  // taxonomy index wins.
  const double top = *std::max_element(p.scores.begin(), p.scores.end());
  const double slack = kTieTolerance * std::max(1.0, std::abs(top));
  p.index = 0;
  while (p.scores[p.index] < top - slack) ++p.index;
  p.category = model.taxonomy[p.index];
  p.confidence = softmax(p.scores)[p.index];
  return p;
}

std::vector<std::pair<ProcessedLine, Prediction>> classify_lines(
    const ModelFile& model, const std::vector<ProcessedLine>& lines) {
  std::vector<std::pair<ProcessedLine, Prediction>> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.emplace_back(line, predict_line(model, line.tokens));
  return out;
}

LabeledCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read corpus " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto rows = csv::parse(text);
  if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "category" || rows[0][1] != "text")
    throw Error("corpus " + path.string() + " must start with the header 'category,text'");

  LabeledCorpus corpus;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 2)
      throw Error("corpus row " + std::to_string(r + 1) + " does not have two columns");
    LabeledExample ex;
    ex.category = row[0];
    std::size_t i = 0;
    const std::string& t = row[1];
    while (i < t.size()) {
      while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
      std::size_t j = i;
      while (j < t.size() && !std::isspace(static_cast<unsigned char>(t[j]))) ++j;
      if (j > i) ex.tokens.emplace_back(t.substr(i, j - i));
      i = j;
    }
    corpus.push_back(std::move(ex));
  }
  return corpus;
}

ModelFile train_baseline(const LabeledCorpus& corpus, const Taxonomy& taxonomy, double alpha,
                         std::map<std::string, std::string> metadata) {
  if (corpus.empty()) throw EmptyCorpus("training corpus has no examples");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("smoothing constant alpha must be positive");
  if (taxonomy.size() == 0) throw std::invalid_argument("taxonomy must not be empty");

  const std::size_t classes = taxonomy.size();
  std::vector<std::size_t> labels;
  labels.reserve(corpus.size());
  std::set<std::string> tokens;
  for (const auto& ex : corpus) {
    auto idx = taxonomy.index_of(ex.category);
    if (!idx) throw UnknownCategory("example labeled '" + ex.category + "' is outside the taxonomy");
    if (ex.tokens.empty()) throw std::invalid_argument("training example without tokens");
    labels.push_back(*idx);
    tokens.insert(ex.tokens.begin(), ex.tokens.end());
  }

  ModelFile m;
  m.taxonomy = taxonomy;
  std::size_t next = 0;
  for (const auto& t : tokens) m.vocabulary.emplace(t, next++);
  const std::size_t vocab = m.vocabulary.size();

  std::vector<std::size_t> docs(classes, 0);
  std::vector<std::size_t> total(classes, 0);
  std::vector<std::vector<std::size_t>> counts(classes, std::vector<std::size_t>(vocab, 0));
  for (std::size_t e = 0; e < corpus.size(); ++e) {
    const std::size_t c = labels[e];
    ++docs[c];
    for (const auto& t : corpus[e].tokens) {
      ++counts[c][m.vocabulary.at(t)];
      ++total[c];
    }
  }

  const double n = static_cast<double>(corpus.size());
  m.bias.resize(classes);
  m.weights.assign(classes, std::vector<double>(vocab, 0.0));
  for (std::size_t c = 0; c < classes; ++c) {
    m.bias[c] = docs[c] == 0 ? std::numeric_limits<double>::lowest()
                             : std::log(static_cast<double>(docs[c]) / n);
    const double denom = static_cast<double>(total[c]) + alpha * static_cast<double>(vocab);
    for (std::size_t t = 0; t < vocab; ++t)
      m.weights[c][t] = std::log((static_cast<double>(counts[c][t]) + alpha) / denom);
  }

  metadata.emplace("trainer", "multinomial-naive-bayes");
  metadata.emplace("alpha", render_double(alpha));
  metadata.emplace("documents", std::to_string(corpus.size()));
  m.metadata = std::move(metadata);
  return m;
}

}  // namespace threadsift
