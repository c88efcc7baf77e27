// mfst/eval.hpp
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

#ifndef MFST_EVAL_HPP
#define MFST_EVAL_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mfst/stream.hpp"
#include "mfst/transducer.hpp"

namespace mfst {

struct CleaningConfig {
  std::set<std::string> stopwords;  // NFC, matched exactly on normalized tokens
  bool strip_delimiters = true;
  bool collapse_whitespace = true;
};

/// One word per line, UTF-8, NFC-normalized; blank lines ignored.
std::set<std::string> parse_stopwords(std::string_view text);

/// Tokenizes and cleans: word tokens are NFC-normalized and stopwords
/// dropped; separator runs are dropped when strip_delimiters is set,
/// otherwise kept with whitespace runs collapsed to one space when
/// collapse_whitespace is set.
std::vector<StreamToken> clean_corpus(std::string_view text, const CleaningConfig& config,
                                      const Alphabet& alphabet);

std::vector<std::string> word_texts(const std::vector<StreamToken>& tokens);

struct GoldRecord {
  std::string surface;   // NFC
  std::string expected;  // lexical-form text
  bool operator==(const GoldRecord&) const = default;
};

/// `surface<TAB>expected` per line, UTF-8; blank lines ignored. Throws
/// std::runtime_error naming the line on malformed records.
std::vector<GoldRecord> parse_gold_tsv(std::string_view text);

struct EvalReport {
  std::uint64_t total = 0;
  std::uint64_t correct = 0;
  std::uint64_t wrong = 0;

  /// Accuracy in tenths of a percent, rounded half up.
  std::uint64_t accuracy_tenths() const { return (2000 * correct + total) / (2 * total); }
  std::string accuracy_text() const;
  /// Three count lines plus the accuracy line, tab-separated.
  std::string to_table() const;

  bool operator==(const EvalReport&) const = default;
};

/// Token at `index` does not match the gold surface (or the sequences have
/// different lengths; then index is the shorter length).
class AlignmentError : public std::runtime_error {
public:
  explicit AlignmentError(std::size_t index)
      : std::runtime_error("token/gold mismatch at record " + std::to_string(index + 1)),
        index_(index) {}

  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

class EmptyEvaluation : public std::runtime_error {
public:
  EmptyEvaluation() : std::runtime_error("no tokens to evaluate") {}
};

/// A token counts as correct when its gold analysis is among the analyzer's
/// outputs for it; unknown tokens are never correct.
EvalReport evaluate(const std::vector<std::string>& tokens, const std::vector<GoldRecord>& gold,
                    const LetterTransducer& analyzer);

/// Section entries counted by the first tag in their expansion, in tag_defs
/// order; zero-count categories omitted. Requires a valid dictionary.
std::vector<std::pair<std::string, std::uint64_t>> dict_stats(const MonodixDictionary& dict);

}  // namespace mfst

#endif  // MFST_EVAL_HPP
