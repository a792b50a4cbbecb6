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

#ifndef THREADSIFT_CLASSIFIER_HPP_
#define THREADSIFT_CLASSIFIER_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "threadsift/text_prep.hpp"

namespace threadsift {

/// Ordered, duplicate-free (case-insensitively) list of category names.
/// Order is significant: ties resolve to the lowest index.
class Taxonomy {
 public:
  Taxonomy() = default;
  /// Throws std::invalid_argument on empty or duplicate names.
  explicit Taxonomy(std::vector<std::string> categories);

  const std::vector<std::string>& categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }
  const std::string& operator[](std::size_t i) const { return categories_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }

  bool operator==(const Taxonomy&) const = default;

 private:
  std::vector<std::string> categories_;
};

/// Discussion categories of the bundled model. Partial:
/// the full scheme has sixteen categories.
const Taxonomy& default_taxonomy();

inline constexpr int kModelFormatVersion = 1;

/// Linear classifier: score[c] = bias[c] + sum_t weights[c][vocab(t)].
struct ModelFile {
  int format_version = kModelFormatVersion;
  Taxonomy taxonomy;
  std::map<std::string, std::size_t> vocabulary;
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  std::map<std::string, std::string> metadata;

  bool operator==(const ModelFile&) const = default;
};

/// Throws SchemaViolation naming the first offending field.
void validate(const ModelFile& model);

/// Canonical text form: sorted keys, fixed indentation, shortest round-trip
/// number rendering. Equal models give byte-identical documents.
std::string serialize_model(const ModelFile& model);
ModelFile parse_model(const std::string& document);

ModelFile load_model(const std::filesystem::path& path);
void save_model(const ModelFile& model, const std::filesystem::path& path);

struct Prediction {
  std::size_t index = 0;
  std::string category;
  std::vector<double> scores;
  double confidence = 0.0;

  /// Softmax of `scores`.
  std::vector<double> probabilities() const;

  bool operator==(const Prediction&) const = default;
};

std::vector<double> softmax(std::span<const double> scores);

/// Relative score difference below which two categories are treated as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Scores preprocessed tokens; the model itself never preprocesses.
/// Out-of-vocabulary tokens contribute nothing.
Prediction predict_line(const ModelFile& model, std::span<const std::string> tokens);

std::vector<std::pair<ProcessedLine, Prediction>> classify_lines(
    const ModelFile& model, const std::vector<ProcessedLine>& lines);

struct LabeledExample {
  std::vector<std::string> tokens;
  std::string category;
};
using LabeledCorpus = std::vector<LabeledExample>;

/// Two-column CSV with header `category,text`; text is split on whitespace
/// verbatim.
LabeledCorpus load_corpus(const std::filesystem::path& path);

/// Multinomial naive Bayes with add-alpha smoothing, in linear form.
/// Categories with no training examples get the lowest finite bias.
ModelFile train_baseline(const LabeledCorpus& corpus, const Taxonomy& taxonomy, double alpha,
                         std::map<std::string, std::string> metadata = {});

}  // namespace threadsift

#endif  // THREADSIFT_CLASSIFIER_HPP_
