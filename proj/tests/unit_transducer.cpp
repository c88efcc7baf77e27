// unit_transducer.cpp
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

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfst/dix_parser.hpp"
#include "mfst/expander.hpp"
#include "mfst/stream.hpp"
#include "mfst/transducer.hpp"
#include "random_dix.hpp"

using namespace mfst;

namespace {

const char* kFixture = MFST_FIXTURES_DIR "/asm-mini.dix";

std::vector<std::string> analyses(const LetterTransducer& t, std::string_view input) {
  std::vector<std::string> out;
  for (const AtomSeq& seq : t.lookup(parse_lexform(input))) out.push_back(render_atoms(seq));
  return out;
}

/// Two states, one (a, a) arc into the final state.
std::vector<std::uint8_t> golden_image() {
  return {
      0x4D, 0x46, 0x53, 0x54,              // magic
      0x01, 0x00,                          // version
      0x00, 0x00,                          // flags
      0x01, 0x00, 0x00, 0x00,              // symbol count
      0x00,                                // kind: character
      0x01, 0x00, 0x00, 0x00,              // byte length
      0x61,                                // "a"
      0x02, 0x00, 0x00, 0x00,              // state count
      0x01, 0x00, 0x00, 0x00,              // final count
      0x01, 0x00, 0x00, 0x00,              // final state 1
      0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // transition count
      0x00, 0x00, 0x00, 0x00,              // source 0
      0x01, 0x00, 0x00, 0x00,              // in a
      0x01, 0x00, 0x00, 0x00,              // out a
      0x01, 0x00, 0x00, 0x00,              // target 1
  };
}

LoadErrorKind load_error_kind(const std::vector<std::uint8_t>& bytes) {
  try {
    load(bytes);
  } catch (const LoadError& e) {
    return e.kind();
  }
  FAIL("expected LoadError");
  return LoadErrorKind::MalformedData;
}

using LookupKey = std::vector<Atom>;
using LookupSet = std::set<LookupKey>;

LookupSet lookup_set(const LetterTransducer& t, const AtomSeq& input) {
  std::vector<AtomSeq> results = t.lookup(input);
  return {results.begin(), results.end()};
}

/// Expected lookup relation from the expander, keyed by input side.
std::map<AtomSeq, LookupSet> oracle(const MonodixDictionary& dict, CompileDirection dir) {
  std::map<AtomSeq, LookupSet> expected;
  for (const MorphPair& pair : expand_all(dict)) {
    if (!admits(pair.restriction, dir)) continue;
    const AtomSeq& in = dir == CompileDirection::LeftToRight ? pair.surface : pair.lexical;
    const AtomSeq& out = dir == CompileDirection::LeftToRight ? pair.lexical : pair.surface;
    expected[in].insert(out);
  }
  return expected;
}

}  // namespace

TEST_CASE("analysis lookups on the shipped dictionary") {
  LetterTransducer t = compile(parse_dix_file(kFixture), CompileDirection::LeftToRight);
  CHECK(t.direction == CompileDirection::LeftToRight);
  CHECK_FALSE(t.minimized);

  CHECK(analyses(t, "চকুযুৰি") == std::vector<std::string>{"চকু<n><pl>"});
  CHECK(analyses(t, "মানুহবোৰ") == std::vector<std::string>{"মানুহ<n><pl>"});
  CHECK(analyses(t, "জন") == std::vector<std::string>{"জন<n><sg>", "জন<np>"});
  CHECK(analyses(t, "জনবোৰ") == std::vector<std::string>{"জন<n><pl>"});
  CHECK(analyses(t, "কুকুৰ").empty());
  CHECK(analyses(t, "চকুযু").empty());
  CHECK(analyses(t, "").empty());
}

TEST_CASE("generation lookups on the shipped dictionary") {
  LetterTransducer t = compile(parse_dix_file(kFixture), CompileDirection::RightToLeft);
  CHECK(t.direction == CompileDirection::RightToLeft);

  CHECK(analyses(t, "চকু<n><pl>") == std::vector<std::string>{"চকুযুৰি"});
  CHECK(analyses(t, "জন<np>") == std::vector<std::string>{"জন"});
  CHECK(analyses(t, "জন<n><sg>") == std::vector<std::string>{"জন"});
  CHECK(analyses(t, "জন<pl>").empty());
  CHECK(analyses(t, "জন").empty());
}

TEST_CASE("surface and lexical segments align with epsilon padding") {
  MonodixDictionary d = parse_dix(
      "<dictionary><sdefs><sdef n=\"n\"/><sdef n=\"v\"/><sdef n=\"pl\"/></sdefs>"
      "<section id=\"s\" type=\"standard\">"
      "<e><p><l>abc</l><r><s n=\"n\"/></r></p></e>"
      "<e><i>x</i><p><l>ab</l><r><s n=\"v\"/></r></p><p><l/><r><s n=\"pl\"/></r></p></e>"
      "</section></dictionary>");

  LetterTransducer lr = compile(d, CompileDirection::LeftToRight);
  CHECK(analyses(lr, "abc") == std::vector<std::string>{"<n>"});
  CHECK(analyses(lr, "xab") == std::vector<std::string>{"x<v><pl>"});
  CHECK(analyses(lr, "ab").empty());

  LetterTransducer rl = compile(d, CompileDirection::RightToLeft);
  CHECK(analyses(rl, "<n>") == std::vector<std::string>{"abc"});
  CHECK(analyses(rl, "x<v><pl>") == std::vector<std::string>{"xab"});
}

TEST_CASE("directional restrictions prune compilation") {
  MonodixDictionary d = parse_dix(
      "<dictionary><sdefs><sdef n=\"n\"/></sdefs>"
      "<section id=\"s\" type=\"standard\">"
      "<e r=\"RL\"><p><l>colour</l><r>color<s n=\"n\"/></r></p></e>"
      "<e><p><l>color</l><r>color<s n=\"n\"/></r></p></e>"
      "</section></dictionary>");

  LetterTransducer lr = compile(d, CompileDirection::LeftToRight);
  CHECK(analyses(lr, "colour").empty());
  CHECK(analyses(lr, "color") == std::vector<std::string>{"color<n>"});

  LetterTransducer rl = compile(d, CompileDirection::RightToLeft);
  CHECK(analyses(rl, "color<n>") == std::vector<std::string>{"color", "colour"});
}

TEST_CASE("compiling right to left equals compiling the flipped dictionary") {
  MonodixDictionary d = parse_dix_file(kFixture);
  LetterTransducer rl = compile(d, CompileDirection::RightToLeft);
  LetterTransducer lr_of_flip = compile(flip(d), CompileDirection::LeftToRight);
  CHECK(rl.symbols == lr_of_flip.symbols);
  CHECK(rl.states == lr_of_flip.states);
  CHECK(rl.finals == lr_of_flip.finals);
  CHECK(rl.direction != lr_of_flip.direction);
}

TEST_CASE("minimization preserves lookups with fewer states") {
  MonodixDictionary d = parse_dix_file(kFixture);
  LetterTransducer trie = compile(d, CompileDirection::LeftToRight);
  LetterTransducer min = minimize(trie);

  CHECK(min.minimized);
  CHECK(min.direction == trie.direction);
  // Shared plural suffixes merge, so strictly fewer states.
  CHECK(min.states.size() < trie.states.size());

  for (const MorphPair& pair : expand_all(d))
    CHECK(lookup_set(min, pair.surface) == lookup_set(trie, pair.surface));
  CHECK(analyses(min, "জন") == std::vector<std::string>{"জন<n><sg>", "জন<np>"});
  CHECK(analyses(min, "কুকুৰ").empty());
}

TEST_CASE("minimization is idempotent and canonical") {
  MonodixDictionary d = parse_dix_file(kFixture);
  for (CompileDirection dir : {CompileDirection::LeftToRight, CompileDirection::RightToLeft}) {
    LetterTransducer min = minimize(compile(d, dir));
    CHECK(minimize(min) == min);
  }
}

TEST_CASE("minimization trims unreachable and dead states") {
  LetterTransducer t;
  SymbolId a = t.symbols.intern_char(U'a');
  SymbolId b = t.symbols.intern_char(U'b');
  t.states.assign(4, {});
  t.states[0] = {{a, a, 1}, {b, b, 2}};
  t.finals = {1, 3};

  LetterTransducer min = minimize(t);
  CHECK(min.states.size() == 2);
  CHECK(analyses(min, "a") == std::vector<std::string>{"a"});
  CHECK(analyses(min, "b").empty());
}

TEST_CASE("an accepting-nothing machine minimizes to the canonical empty machine") {
  MonodixDictionary d = parse_dix("<dictionary/>");
  LetterTransducer empty = minimize(compile(d, CompileDirection::LeftToRight));
  CHECK(empty.states.size() == 1);
  CHECK(empty.finals.empty());
  CHECK(empty.lookup(parse_lexform("a")).empty());
  CHECK(minimize(empty) == empty);
}

TEST_CASE("cyclic machines are rejected") {
  LetterTransducer cyclic;
  SymbolId a = cyclic.symbols.intern_char(U'a');
  cyclic.states[0].push_back({a, a, 0});
  cyclic.finals = {0};
  CHECK_THROWS_AS(minimize(cyclic), std::logic_error);

  LetterTransducer eps_loop;
  eps_loop.states[0].push_back({kEpsilonId, kEpsilonId, 0});
  eps_loop.finals = {0};
  CHECK_THROWS_AS(eps_loop.lookup(AtomSeq{}), std::logic_error);
}

TEST_CASE("lookups match the expansion oracle on random dictionaries") {
  std::mt19937 rng(20260816);
  for (int trial = 0; trial < 20; ++trial) {
    MonodixDictionary d = testing::random_dictionary(rng);
    REQUIRE(validate(d).ok());
    for (CompileDirection dir : {CompileDirection::LeftToRight, CompileDirection::RightToLeft}) {
      LetterTransducer t = compile(d, dir);
      LetterTransducer min = minimize(t);
      auto expected = oracle(d, dir);
      for (const auto& [input, outputs] : expected) {
        CHECK(lookup_set(t, input) == outputs);
        CHECK(lookup_set(min, input) == outputs);
      }
      std::vector<char32_t> chars(d.alphabet.begin(), d.alphabet.end());
      for (int probe = 0; probe < 50; ++probe) {
        AtomSeq input = atoms_from_chars(testing::random_text(rng, chars, 0, 8));
        auto it = expected.find(input);
        LookupSet want = it == expected.end() ? LookupSet{} : it->second;
        CHECK(lookup_set(t, input) == want);
        CHECK(lookup_set(min, input) == want);
      }
    }
  }
}

TEST_CASE("a hand-written binary image loads to the expected machine") {
  std::vector<std::uint8_t> image = golden_image();
  LetterTransducer t = load(image);
  CHECK(t.direction == CompileDirection::LeftToRight);
  CHECK_FALSE(t.minimized);
  CHECK(t.symbols.size() == 2);
  CHECK(t.states.size() == 2);
  CHECK(t.finals == std::vector<std::uint32_t>{1});
  CHECK(analyses(t, "a") == std::vector<std::string>{"a"});
  CHECK(save(t) == image);
}

TEST_CASE("save and load round trip compiled machines") {
  MonodixDictionary d = parse_dix_file(kFixture);
  for (CompileDirection dir : {CompileDirection::LeftToRight, CompileDirection::RightToLeft}) {
    LetterTransducer trie = compile(d, dir);
    CHECK(load(save(trie)) == trie);
    LetterTransducer min = minimize(trie);
    CHECK(load(save(min)) == min);
  }

  LetterTransducer empty = minimize(compile(parse_dix("<dictionary/>"), CompileDirection::LeftToRight));
  CHECK(load(save(empty)) == empty);
}

TEST_CASE("each corruption is rejected with its own error kind") {
  std::vector<std::uint8_t> image = golden_image();

  auto mutated = [&](std::size_t offset, std::uint8_t value) {
    std::vector<std::uint8_t> copy = image;
    copy[offset] = value;
    return copy;
  };

  CHECK(load_error_kind(mutated(0, 0x00)) == LoadErrorKind::BadMagic);
  CHECK(load_error_kind(mutated(4, 0x02)) == LoadErrorKind::UnsupportedVersion);
  CHECK(load_error_kind(mutated(6, 0xFF)) == LoadErrorKind::MalformedData);  // unknown flags
  CHECK(load_error_kind(mutated(12, 0x05)) == LoadErrorKind::MalformedData);  // symbol kind
  CHECK(load_error_kind(mutated(26, 0x05)) == LoadErrorKind::DanglingStateId);  // final state 5
  CHECK(load_error_kind(mutated(42, 0x07)) == LoadErrorKind::DanglingSymbolId);  // input label 7
  CHECK(load_error_kind(mutated(50, 0x09)) == LoadErrorKind::DanglingStateId);  // target state 9
  CHECK(load_error_kind(mutated(19, 0xFF)) == LoadErrorKind::MalformedData);  // implausible states

  std::vector<std::uint8_t> truncated = image;
  truncated.pop_back();
  CHECK(load_error_kind(truncated) == LoadErrorKind::TruncatedFile);
  CHECK(load_error_kind(std::vector<std::uint8_t>{}) == LoadErrorKind::TruncatedFile);

  std::vector<std::uint8_t> trailing = image;
  trailing.push_back(0x00);
  CHECK(load_error_kind(trailing) == LoadErrorKind::MalformedData);

  std::vector<std::uint8_t> no_states = image;
  no_states[18] = no_states[19] = no_states[20] = no_states[21] = 0;
  CHECK(load_error_kind(no_states) == LoadErrorKind::MalformedData);
}

TEST_CASE("unsorted transitions are rejected") {
  MonodixDictionary d = parse_dix(
      "<dictionary><section id=\"s\" type=\"standard\">"
      "<e><i>ab</i></e>"
      "</section></dictionary>");
  LetterTransducer t = compile(d, CompileDirection::LeftToRight);
  REQUIRE(t.transition_count() == 2);
  std::vector<std::uint8_t> image = save(t);

  // The two transition records are the last 32 bytes; swapping them breaks
  // the global (source, in, out, target) order.
  std::vector<std::uint8_t> swapped = image;
  std::size_t start = image.size() - 32;
  for (std::size_t i = 0; i < 16; ++i)
    std::swap(swapped[start + i], swapped[start + 16 + i]);
  CHECK(load_error_kind(swapped) == LoadErrorKind::MalformedData);
}

TEST_CASE("lookups with symbols outside the table are empty") {
  LetterTransducer t = compile(parse_dix_file(kFixture), CompileDirection::LeftToRight);
  CHECK(t.lookup(parse_lexform("zzz")).empty());
  CHECK(t.lookup(parse_lexform("চকু<zz>")).empty());
}
