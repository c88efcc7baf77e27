// unit_unicode.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfst/unicode.hpp"

using namespace mfst;

TEST_CASE("utf8 round trips across encoding widths") {
  const std::u32string samples[] = {
      U"",
      U"plain ascii",
      U"café",
      U"চকুযুৰি",
      U"\U0001D11E\U0001F600",
  };
  for (const std::u32string& s : samples) {
    std::string bytes = uni::encode_utf8(s);
    CHECK(uni::decode_utf8(bytes) == s);
  }
}

TEST_CASE("decode_one reports byte lengths") {
  char32_t cp = 0;
  CHECK(uni::decode_one("a", 1, cp) == 1);
  CHECK(cp == U'a');
  std::string two = uni::encode_utf8(U"é");
  CHECK(uni::decode_one(two.data(), two.size(), cp) == 2);
  CHECK(cp == U'é');
  std::string three = uni::encode_utf8(U"চ");
  CHECK(uni::decode_one(three.data(), three.size(), cp) == 3);
  CHECK(cp == U'চ');
  std::string four = uni::encode_utf8(U"\U0001D11E");
  CHECK(uni::decode_one(four.data(), four.size(), cp) == 4);
  CHECK(cp == U'\U0001D11E');
}

TEST_CASE("decode_one rejects malformed sequences") {
  char32_t cp = 0;
  CHECK(uni::decode_one("\xFF", 1, cp) == 0);
  CHECK(uni::decode_one("\x80", 1, cp) == 0);          // bare continuation
  CHECK(uni::decode_one("\xC0\x80", 2, cp) == 0);      // overlong
  CHECK(uni::decode_one("\xE0\x80\x80", 3, cp) == 0);  // overlong
  CHECK(uni::decode_one("\xED\xA0\x80", 3, cp) == 0);  // surrogate
  CHECK(uni::decode_one("\xF4\x90\x80\x80", 4, cp) == 0);  // above U+10FFFF
  CHECK(uni::decode_one("\xE0\xA6", 2, cp) == 0);      // truncated
}

TEST_CASE("decode_utf8 throws with the offending offset") {
  try {
    uni::decode_utf8(std::string("ab\xFFzz"));
    FAIL("expected Utf8Error");
  } catch (const uni::Utf8Error& e) {
    CHECK(e.offset == 2);
  }
}

TEST_CASE("nfc composes combining sequences") {
  CHECK(uni::nfc(U"é") == U"é");
  // vowel sign E + AA compose to O
  CHECK(uni::nfc(U"ো") == U"ো");
  CHECK(uni::nfc(U"ো") == U"ো");
}

TEST_CASE("nfc keeps excluded compositions decomposed") {
  // Bengali RRA is a composition exclusion
  CHECK(uni::nfc(U"ড়") == U"ড়");
  CHECK(uni::nfc(U"ড়") == U"ড়");
}

TEST_CASE("nfc is idempotent and preserves ascii") {
  const std::u32string samples[] = {U"hello", U"é", U"মানুহ",
                                    U"ড়ো"};
  for (const std::u32string& s : samples) {
    std::u32string once = uni::nfc(s);
    CHECK(uni::nfc(once) == once);
  }
  CHECK(uni::nfc(U"plain") == U"plain");
  CHECK(uni::nfc_utf8("plain") == "plain");
}

TEST_CASE("word characters cover letters marks and digits") {
  CHECK(uni::is_word_char(U'চ'));  // letter CA
  CHECK(uni::is_word_char(U'ু'));  // vowel sign U
  CHECK(uni::is_word_char(U'্'));  // virama
  CHECK(uni::is_word_char(U'়'));  // nukta
  CHECK(uni::is_word_char(U'a'));
  CHECK(uni::is_word_char(U'7'));
  CHECK(uni::is_word_char(U'১'));  // Bengali digit one
  CHECK_FALSE(uni::is_word_char(U'?'));
  CHECK_FALSE(uni::is_word_char(U' '));
  CHECK_FALSE(uni::is_word_char(U'^'));
  CHECK_FALSE(uni::is_word_char(U'।'));  // danda
}

TEST_CASE("whitespace classification") {
  CHECK(uni::is_space(U' '));
  CHECK(uni::is_space(U'\t'));
  CHECK(uni::is_space(U'\n'));
  CHECK_FALSE(uni::is_space(U'x'));
  CHECK_FALSE(uni::is_space(U'চ'));
}
