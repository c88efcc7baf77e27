// unit_dix_parser.cpp
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

#include <string>

#include "mfst/dictionary.hpp"
#include "mfst/dix_parser.hpp"
#include "mfst/stream.hpp"
#include "mfst/unicode.hpp"

using namespace mfst;

namespace {

const char* kFixture = MFST_FIXTURES_DIR "/asm-mini.dix";

std::string wrap(std::string_view body) {
  return std::string("<dictionary>") + std::string(body) + "</dictionary>";
}

/// ParseError location for a failing input.
std::pair<std::size_t, std::size_t> error_at(std::string_view xml) {
  try {
    parse_dix(xml);
  } catch (const ParseError& e) {
    return {e.line(), e.col()};
  }
  FAIL("expected ParseError");
  return {0, 0};
}

}  // namespace

TEST_CASE("the shipped dictionary parses into the expected structure") {
  MonodixDictionary d = parse_dix_file(kFixture);

  CHECK(d.alphabet.contains(U'চ'));
  CHECK(d.alphabet.contains(U'ক'));
  CHECK(d.alphabet.contains(U'ু'));
  CHECK(d.alphabet.contains(U'ৰ'));
  CHECK_FALSE(d.alphabet.contains(U'q'));

  REQUIRE(d.tag_defs.size() == 8);
  CHECK(d.tag_defs[0] == "n");
  CHECK(d.tag_defs[1] == "np");
  CHECK(d.tag_defs[7] == "def");

  REQUIRE(d.paradigms.size() == 2);
  CHECK(d.paradigms[0].name == "চকু_n");
  CHECK(d.paradigms[1].name == "মানুহ_n");
  REQUIRE(d.paradigms[0].entries.size() == 2);

  const Entry& zero_suffix = d.paradigms[0].entries[0];
  REQUIRE(zero_suffix.items.size() == 1);
  const auto& sg = std::get<PairItem>(zero_suffix.items[0]);
  CHECK(sg.left.empty());
  CHECK(sg.right == parse_lexform("<n><sg>"));

  const auto& pl = std::get<PairItem>(d.paradigms[0].entries[1].items[0]);
  CHECK(pl.left == atoms_from_chars(U"যুৰি"));
  CHECK(pl.right == parse_lexform("<n><pl>"));

  REQUIRE(d.sections.size() == 1);
  CHECK(d.sections[0].id == "main");
  CHECK(d.sections[0].type == "standard");
  REQUIRE(d.sections[0].entries.size() == 4);

  const Entry& first = d.sections[0].entries[0];
  CHECK(first.lemma == "চকু");
  CHECK(first.restriction == Restriction::Bidirectional);
  REQUIRE(first.items.size() == 2);
  CHECK(std::get<IdentityText>(first.items[0]).text == U"চকু");
  CHECK(std::get<ParadigmRef>(first.items[1]).name == "চকু_n");

  const Entry& inline_np = d.sections[0].entries[3];
  const auto& np = std::get<PairItem>(inline_np.items[1]);
  CHECK(np.left.empty());
  CHECK(np.right == parse_lexform("<np>"));

  CHECK(validate(d).ok());
}

TEST_CASE("inline pairs, spaces and self-closing sides") {
  MonodixDictionary d = parse_dix(wrap(
      "<section id=\"s\" type=\"standard\">"
      "<e><p><l>a<b/>b</l><r>c<s n=\"n\"/></r></p></e>"
      "<e r=\"LR\"><i>xy</i></e>"
      "<e r=\"RL\"><p><l/><r><s n=\"n\"/></r></p></e>"
      "</section>"));

  REQUIRE(d.sections.size() == 1);
  REQUIRE(d.sections[0].entries.size() == 3);

  const auto& pair = std::get<PairItem>(d.sections[0].entries[0].items[0]);
  CHECK(pair.left == atoms_from_chars(U"a b"));
  CHECK(pair.right == parse_lexform("c<n>"));

  CHECK(d.sections[0].entries[1].restriction == Restriction::LeftToRightOnly);
  CHECK(d.sections[0].entries[2].restriction == Restriction::RightToLeftOnly);
  const auto& bare = std::get<PairItem>(d.sections[0].entries[2].items[0]);
  CHECK(bare.left.empty());
  CHECK(bare.right == parse_lexform("<n>"));
}

TEST_CASE("the five named entities decode in text and attributes") {
  MonodixDictionary d = parse_dix(wrap(
      "<pardefs><pardef n=\"q&quot;p\">"
      "<e><p><l>&amp;&lt;</l><r>&gt;&apos;<s n=\"n\"/></r></p></e>"
      "</pardef></pardefs>"));
  CHECK(d.paradigms[0].name == "q\"p");
  const auto& pair = std::get<PairItem>(d.paradigms[0].entries[0].items[0]);
  CHECK(pair.left == atoms_from_chars(U"&<"));
  CHECK(strip_tags(pair.right) == U">'");
}

TEST_CASE("text and attribute values are NFC normalized") {
  // U+09C7 followed by U+09BE composes to U+09CB.
  std::string decomposed = "\xe0\xa7\x87\xe0\xa6\xbe";
  MonodixDictionary d = parse_dix(wrap(
      "<section id=\"s\" type=\"standard\">"
      "<e lm=\"ক" + decomposed + "\"><i>ক" + decomposed + "</i></e>"
      "</section>"));
  const Entry& e = d.sections[0].entries[0];
  CHECK(e.lemma == uni::encode_utf8(U"কো"));
  CHECK(std::get<IdentityText>(e.items[0]).text == U"কো");
}

TEST_CASE("alphabet text ignores embedded whitespace") {
  MonodixDictionary d = parse_dix(wrap("<alphabet>ab\n  cd</alphabet>"));
  CHECK(d.alphabet == std::set<char32_t>{U'a', U'b', U'c', U'd'});
}

TEST_CASE("byte order mark, prolog and comments are accepted") {
  std::string xml =
      "\xEF\xBB\xBF<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<dictionary><!-- intro -->\n"
      "<sdefs><!-- tags --><sdef n=\"n\"/></sdefs>\n"
      "</dictionary>\n";
  MonodixDictionary d = parse_dix(xml);
  REQUIRE(d.tag_defs.size() == 1);
  CHECK(d.tag_defs[0] == "n");
}

TEST_CASE("an empty dictionary parses and round trips") {
  MonodixDictionary d = parse_dix("<dictionary/>");
  CHECK(d.alphabet.empty());
  CHECK(d.tag_defs.empty());
  CHECK(d.paradigms.empty());
  CHECK(d.sections.empty());
  CHECK(parse_dix(write_dix(d)) == d);
}

TEST_CASE("parse then write is the identity on the model") {
  MonodixDictionary d = parse_dix_file(kFixture);
  std::string serialized = write_dix(d);
  CHECK(parse_dix(serialized) == d);
  CHECK(write_dix(parse_dix(serialized)) == serialized);
}

TEST_CASE("serialization escapes markup and preserves restrictions") {
  MonodixDictionary d = parse_dix(wrap(
      "<sdefs><sdef n=\"n\"/></sdefs>"
      "<section id=\"s\" type=\"standard\">"
      "<e r=\"LR\"><i>a&amp;b&lt;c</i></e>"
      "<e r=\"RL\"><p><l>x<b/>y</l><r><s n=\"n\"/></r></p></e>"
      "</section>"));
  std::string serialized = write_dix(d);
  CHECK(serialized.find("a&amp;b&lt;c") != std::string::npos);
  CHECK(serialized.find("x<b/>y") != std::string::npos);
  CHECK(serialized.find("r=\"LR\"") != std::string::npos);
  CHECK(serialized.find("r=\"RL\"") != std::string::npos);
  CHECK(parse_dix(serialized) == d);
}

TEST_CASE("unknown entities and numeric references are rejected") {
  CHECK_THROWS_WITH_AS(parse_dix(wrap("<alphabet>&foo;</alphabet>")),
                       doctest::Contains("unknown entity &foo;"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix(wrap("<alphabet>&#65;</alphabet>")),
                       doctest::Contains("numeric character reference"), ParseError);
}

TEST_CASE("elements outside the grammar are rejected") {
  CHECK_THROWS_WITH_AS(parse_dix(wrap("<bogus/>")),
                       doctest::Contains("unexpected or misplaced element"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><x/></section>")),
      doctest::Contains("unexpected element <x> in <section>"), ParseError);
  // b is markup for l and r only.
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><e><i>a<b/>b</i></e></section>")),
      doctest::Contains("unexpected element <b> in <i>"), ParseError);
  // Stage order: sdefs may not follow pardefs.
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<pardefs></pardefs><sdefs><sdef n=\"n\"/></sdefs>")),
      doctest::Contains("misplaced element <sdefs>"), ParseError);
}

TEST_CASE("attributes outside the grammar are rejected") {
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><e c=\"note\"><i>a</i></e></section>")),
      doctest::Contains("unexpected attribute c on <e>"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix(wrap("<sdefs><sdef/></sdefs>")),
                       doctest::Contains("missing attribute n on <sdef>"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix(wrap("<section id=\"s\"><e><i>a</i></e></section>")),
                       doctest::Contains("missing attribute type on <section>"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><e r=\"XX\"><i>a</i></e></section>")),
      doctest::Contains("attribute r must be LR or RL"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix("<dictionary ><sdefs><sdef n='a' n='b'/></sdefs></dictionary>"),
                       doctest::Contains("duplicate attribute n"), ParseError);
}

TEST_CASE("malformed structure is rejected") {
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><e>text</e></section>")),
      doctest::Contains("unexpected text in <e>"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><e><p/></e></section>")),
      doctest::Contains("<p> requires <l> and <r>"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix("<dictionary>"), doctest::Contains("unterminated"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix("<dictionary></dictionary> <x/>"),
                       doctest::Contains("content after </dictionary>"), ParseError);
  CHECK_THROWS_WITH_AS(parse_dix(wrap("<section id=\"a<b\" type=\"standard\"></section>")),
                       doctest::Contains("'<' in attribute value"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_dix(wrap("<section id=\"s\" type=\"standard\"><e><p><r/><l/></p></e></section>")),
      doctest::Contains("expected <l> in <p>"), ParseError);
}

TEST_CASE("parse errors carry one-based line and column of the offender") {
  auto [line, col] = error_at("<dictionary>\n  <bogus/>\n</dictionary>");
  CHECK(line == 2);
  CHECK(col == 3);

  auto [eline, ecol] = error_at("<dictionary>\n<alphabet>ab&nope;</alphabet>\n</dictionary>");
  CHECK(eline == 2);
  CHECK(ecol == 13);
}

TEST_CASE("column counts code points, not bytes") {
  // Two three-byte characters precede the bad entity on its line.
  auto [line, col] = error_at("<dictionary>\n<alphabet>কখ&nope;</alphabet>\n</dictionary>");
  CHECK(line == 2);
  CHECK(col == 13);
}

TEST_CASE("missing files are reported by path") {
  CHECK_THROWS_WITH_AS(parse_dix_file("/nonexistent/x.dix"), doctest::Contains("/nonexistent/x.dix"),
                       std::runtime_error);
}

TEST_CASE("invalid UTF-8 in dictionary text is rejected") {
  std::string xml = wrap("<alphabet>a\xFF" "b</alphabet>");
  CHECK_THROWS_WITH_AS(parse_dix(xml), doctest::Contains("invalid UTF-8"), ParseError);
}
