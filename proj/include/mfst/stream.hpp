// mfst/stream.hpp
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

#ifndef MFST_STREAM_HPP
#define MFST_STREAM_HPP

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mfst/transducer.hpp"
#include "mfst/unicode.hpp"

namespace mfst {

/// Characters that form words: the transducer's character symbols plus
/// Unicode letters, marks, and digits.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::set<char32_t> chars) : chars_(std::move(chars)) {}
  static Alphabet from_transducer(const LetterTransducer& t) {
    return Alphabet(t.symbols.characters());
  }

  bool contains(char32_t c) const { return uni::is_word_char(c) || chars_.contains(c); }

private:
  std::set<char32_t> chars_;
};

struct StreamToken {
  enum class Kind { Word, Separator };
  Kind kind = Kind::Separator;
  std::string text;  // raw input slice, UTF-8
  bool operator==(const StreamToken&) const = default;
};

/// Lossless partition: maximal alphabet runs become Word tokens, everything
/// else Separator runs; concatenating the texts reproduces the input.
std::vector<StreamToken> tokenize(std::string_view text, const Alphabet& alphabet);

/// Lexical-form text (chars plus `<tag>`) to atoms; backslash escapes a
/// literal character; character runs are NFC-normalized.
AtomSeq parse_lexform(std::string_view text);

/// Unbalanced or malformed `^…$` unit, located by line and column.
class MalformedUnit : public std::runtime_error {
public:
  MalformedUnit(std::string message, std::size_t line, std::size_t col)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

private:
  std::size_t line_;
  std::size_t col_;
};

/// Surface text to the annotated stream: each word becomes
/// `^word/analysis/…$`, unknown words `^word/*word$`, separators pass
/// through with reserved characters escaped. Single pass, memory bounded by
/// the longest token. Requires a LeftToRight transducer.
void analyze_stream(std::istream& in, std::ostream& out, const LetterTransducer& analyzer);
std::string analyze_stream(std::string_view text, const LetterTransducer& analyzer);

/// Annotated stream back to surface text: each `^…$` unit is generated from
/// its lexical form (the first analysis when `/`-separated; a leading `*`
/// passes the unit through verbatim), failures emit `#lexform`, escaped text
/// outside units is unescaped. Requires a RightToLeft transducer. Throws
/// MalformedUnit on unbalanced markers.
void generate_stream(std::istream& in, std::ostream& out, const LetterTransducer& generator);
std::string generate_stream(std::string_view text, const LetterTransducer& generator);

}  // namespace mfst

#endif  // MFST_STREAM_HPP
