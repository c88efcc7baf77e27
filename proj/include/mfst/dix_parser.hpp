// mfst/dix_parser.hpp
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

#ifndef MFST_DIX_PARSER_HPP
#define MFST_DIX_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "mfst/dictionary.hpp"

namespace mfst {

/// Syntax or structure error in a dictionary file, located by 1-based
/// line and column of the offending byte.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t line, std::size_t col)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(col)),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

private:
  std::size_t line_;
  std::size_t col_;
};

/// Parses dictionary XML. Element and attribute text is NFC-normalized.
/// Throws ParseError on malformed input; structural problems beyond the
/// grammar (unknown paradigms, cycles) are left to validate().
MonodixDictionary parse_dix(std::string_view xml);
MonodixDictionary parse_dix_file(const std::string& path);

/// Serializes back to dictionary XML. parse_dix(write_dix(d)) == d for any
/// valid dictionary.
std::string write_dix(const MonodixDictionary& dict);

}  // namespace mfst

#endif  // MFST_DIX_PARSER_HPP
