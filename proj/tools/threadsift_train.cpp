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

// Trains the naive-Bayes baseline from a `category,text` corpus and writes a
// model file.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "threadsift/classifier.hpp"
#include "threadsift/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Train the baseline comment-line classifier.", "threadsift-train"};
  std::string corpus_path, output_path;
  double alpha = 1.0;
  std::vector<std::string> categories;
  std::map<std::string, std::string> metadata;
  std::vector<std::string> meta_pairs;

  app.add_option("--corpus", corpus_path, "CSV with header category,text")->required();
  app.add_option("--output", output_path, "Model file to write")->required();
  app.add_option("--alpha", alpha, "Additive smoothing constant")->check(CLI::PositiveNumber);
  app.add_option("--category", categories,
                 "Taxonomy entry, repeatable, in order (default: built-in taxonomy)");
  app.add_option("--meta", meta_pairs, "key=value metadata entry (repeatable)");
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& kv : meta_pairs) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::cerr << "threadsift-train: --meta expects key=value, got '" << kv << "'\n";
        return 1;
      }
      metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const threadsift::Taxonomy taxonomy =
        categories.empty() ? threadsift::default_taxonomy() : threadsift::Taxonomy(categories);
    const auto corpus = threadsift::load_corpus(corpus_path);
    const auto model = threadsift::train_baseline(corpus, taxonomy, alpha, metadata);
    threadsift::save_model(model, output_path);
    std::cout << "trained on " << corpus.size() << " examples, " << model.vocabulary.size()
              << " features, " << taxonomy.size() << " categories -> " << output_path << "\n";
  } catch (const threadsift::IoFailure& e) {
    std::cerr << "threadsift-train: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "threadsift-train: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
