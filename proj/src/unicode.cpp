// unicode.cpp
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

#include "mfst/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <vector>

namespace mfst::uni {

std::size_t decode_one(const char* p, std::size_t n, char32_t& cp) noexcept {
  if (n == 0) return 0;
  const unsigned char b0 = static_cast<unsigned char>(p[0]);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  std::size_t len;
  char32_t v;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    v = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    v = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    v = b0 & 0x07;
  } else {
    return 0;
  }
  if (n < len) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = static_cast<unsigned char>(p[i]);
    if ((b & 0xC0) != 0x80) return 0;
    v = (v << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (v < kMin[len] || v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) return 0;
  cp = v;
  return len;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    const std::size_t used = decode_one(text.data() + pos, text.size() - pos, cp);
    if (used == 0) throw Utf8Error(pos);
    out.push_back(cp);
    pos += used;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

namespace {

const icu::Normalizer2& nfc_instance() {
  UErrorCode ec = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(ec);
  if (U_FAILURE(ec) || n == nullptr)
    throw std::runtime_error("ICU NFC normalizer unavailable");
  return *n;
}

}  // namespace

std::u32string nfc(std::u32string_view text) {
  if (text.empty()) return {};
  const icu::Normalizer2& norm = nfc_instance();
  std::vector<UChar32> buf(text.begin(), text.end());
  icu::UnicodeString u = icu::UnicodeString::fromUTF32(buf.data(), static_cast<int32_t>(buf.size()));
  UErrorCode ec = U_ZERO_ERROR;
  if (norm.isNormalized(u, ec) && U_SUCCESS(ec)) return std::u32string(text);
  ec = U_ZERO_ERROR;
  icu::UnicodeString composed = norm.normalize(u, ec);
  if (U_FAILURE(ec)) throw std::runtime_error("ICU NFC normalization failed");
  std::u32string out;
  out.reserve(static_cast<std::size_t>(composed.countChar32()));
  for (int32_t i = 0; i < composed.length();) {
    const UChar32 cp = composed.char32At(i);
    out.push_back(static_cast<char32_t>(cp));
    i += U16_LENGTH(cp);
  }
  return out;
}

std::string nfc_utf8(std::string_view text) {
  return encode_utf8(nfc(decode_utf8(text)));
}

bool is_word_char(char32_t cp) noexcept {
  switch (u_charType(static_cast<UChar32>(cp))) {
    case U_UPPERCASE_LETTER:
    case U_LOWERCASE_LETTER:
    case U_TITLECASE_LETTER:
    case U_MODIFIER_LETTER:
    case U_OTHER_LETTER:
    case U_NON_SPACING_MARK:
    case U_ENCLOSING_MARK:
    case U_COMBINING_SPACING_MARK:
    case U_DECIMAL_DIGIT_NUMBER:
    case U_LETTER_NUMBER:
      return true;
    default:
      return false;
  }
}

bool is_space(char32_t cp) noexcept {
  return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

}  // namespace mfst::uni
