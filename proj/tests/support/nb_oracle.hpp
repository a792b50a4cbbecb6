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

#ifndef THREADSIFT_TESTS_NB_ORACLE_HPP_
#define THREADSIFT_TESTS_NB_ORACLE_HPP_

// Brute-force naive Bayes posterior computed with exact rationals and with
// plain probability products, straight from corpus counts. Shares no code
// with the trainer or predictor.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace threadsift::testing {

struct OracleDoc {
  std::vector<std::string> tokens;
  std::size_t label;
};

struct OracleResult {
  std::size_t argmax;               // exact, lowest index on ties
  std::vector<double> log_scores;   // ln of the double-precision product
};

inline OracleResult nb_oracle(const std::vector<OracleDoc>& docs, std::size_t classes,
                              const std::vector<std::string>& query, long alpha = 1) {
  using boost::multiprecision::cpp_rational;
  std::set<std::string> vocab;
  for (const auto& d : docs) vocab.insert(d.tokens.begin(), d.tokens.end());
  const long v = static_cast<long>(vocab.size());

  std::vector<long> n_docs(classes, 0), n_tokens(classes, 0);
  std::vector<std::map<std::string, long>> counts(classes);
  for (const auto& d : docs) {
    ++n_docs[d.label];
    for (const auto& t : d.tokens) {
      ++counts[d.label][t];
      ++n_tokens[d.label];
    }
  }
  const long n = static_cast<long>(docs.size());

  OracleResult r;
  cpp_rational best = -1;
  for (std::size_t c = 0; c < classes; ++c) {
    cpp_rational exact(n_docs[c], n);
    double approx = static_cast<double>(n_docs[c]) / static_cast<double>(n);
    for (const auto& t : query) {
      if (!vocab.count(t)) continue;
      const long num = (counts[c].count(t) ? counts[c].at(t) : 0) + alpha;
      const long den = n_tokens[c] + alpha * v;
      exact *= cpp_rational(num, den);
      approx *= static_cast<double>(num) / static_cast<double>(den);
    }
    if (exact > best) {
      best = exact;
      r.argmax = c;
    }
    r.log_scores.push_back(std::log(approx));
  }
  return r;
}

/// Small random corpus: every class gets at least one document and every
/// document at least one token.
inline std::vector<OracleDoc> random_small_corpus(std::mt19937_64& rng, std::size_t classes,
                                                  std::size_t max_docs, std::size_t max_vocab) {
  std::uniform_int_distribution<std::size_t> vocab_size(1, max_vocab);
  const std::size_t vsz = vocab_size(rng);
  std::uniform_int_distribution<std::size_t> tok(0, vsz - 1);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  std::uniform_int_distribution<std::size_t> ndocs(classes, std::max(classes, max_docs));
  std::uniform_int_distribution<std::size_t> label(0, classes - 1);
  std::vector<OracleDoc> docs(ndocs(rng));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs[i].label = i < classes ? i : label(rng);
    const std::size_t l = len(rng);
    for (std::size_t k = 0; k < l; ++k) docs[i].tokens.push_back("w" + std::to_string(tok(rng)));
  }
  std::shuffle(docs.begin(), docs.end(), rng);
  return docs;
}

}  // namespace threadsift::testing

#endif  // THREADSIFT_TESTS_NB_ORACLE_HPP_
