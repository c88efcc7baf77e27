// mfst/unicode.hpp
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

#ifndef MFST_UNICODE_HPP
#define MFST_UNICODE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mfst::uni {

class Utf8Error : public std::runtime_error {
public:
  explicit Utf8Error(std::size_t offset)
      : std::runtime_error("invalid UTF-8 at byte offset " + std::to_string(offset)),
        offset(offset) {}
  std::size_t offset;
};

/// Decodes one scalar value from [p, p+n). Returns the number of bytes
/// consumed, or 0 if the prefix is not a valid UTF-8 sequence.
std::size_t decode_one(const char* p, std::size_t n, char32_t& cp) noexcept;

std::u32string decode_utf8(std::string_view text);  // throws Utf8Error
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

/// Canonical composition (NFC).
std::u32string nfc(std::u32string_view text);
std::string nfc_utf8(std::string_view text);  // throws Utf8Error

/// True for letters, combining marks and decimal digits, the default
/// notion of a word character when a symbol is not otherwise known.
bool is_word_char(char32_t cp) noexcept;

/// True for whitespace (White_Space property).
bool is_space(char32_t cp) noexcept;

}  // namespace mfst::uni

#endif  // MFST_UNICODE_HPP
