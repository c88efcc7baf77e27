// mfst/dictionary.hpp
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

#ifndef MFST_DICTIONARY_HPP
#define MFST_DICTIONARY_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace mfst {

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

enum class SymbolKind : std::uint8_t { Epsilon = 0, Character = 1, Tag = 2 };

/// One transducer symbol: the empty symbol, a single Unicode scalar value,
/// or an atomic grammatical tag such as `n` or `pl`.
struct Symbol {
  SymbolKind kind = SymbolKind::Epsilon;
  char32_t ch = 0;   // Character payload
  std::string tag;   // Tag payload, UTF-8

  static Symbol epsilon() { return {}; }
  static Symbol character(char32_t c) { return {SymbolKind::Character, c, {}}; }
  static Symbol make_tag(std::string name) { return {SymbolKind::Tag, 0, std::move(name)}; }

  auto operator<=>(const Symbol&) const = default;
};

using SymbolId = std::uint32_t;
inline constexpr SymbolId kEpsilonId = 0;

/// Bijective symbol <-> ordinal table. Ordinal 0 is always the epsilon.
class SymbolTable {
public:
  SymbolTable() { symbols_.push_back(Symbol::epsilon()); }

  SymbolId intern_char(char32_t c);
  SymbolId intern_tag(std::string_view name);
  std::optional<SymbolId> find_char(char32_t c) const;
  std::optional<SymbolId> find_tag(std::string_view name) const;

  const Symbol& at(SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  /// All Character symbols in the table.
  std::set<char32_t> characters() const;

  bool operator==(const SymbolTable& other) const { return symbols_ == other.symbols_; }

private:
  std::vector<Symbol> symbols_;
  std::unordered_map<char32_t, SymbolId> by_char_;
  std::unordered_map<std::string, SymbolId> by_tag_;
};

// ---------------------------------------------------------------------------
// Lexical text atoms
// ---------------------------------------------------------------------------

/// One atom of lexical text: a character or an atomic tag. `<n><pl>` is two
/// atoms, never five characters.
class Atom {
public:
  static Atom character(char32_t c) { return Atom(SymbolKind::Character, c, {}); }
  static Atom tag(std::string name) { return Atom(SymbolKind::Tag, 0, std::move(name)); }

  bool is_tag() const { return kind_ == SymbolKind::Tag; }
  bool is_char() const { return kind_ == SymbolKind::Character; }
  char32_t ch() const { return ch_; }
  const std::string& tag_name() const { return tag_; }

  Symbol to_symbol() const {
    return is_tag() ? Symbol::make_tag(tag_) : Symbol::character(ch_);
  }

  auto operator<=>(const Atom&) const = default;

private:
  Atom(SymbolKind k, char32_t c, std::string t) : kind_(k), ch_(c), tag_(std::move(t)) {}
  SymbolKind kind_;
  char32_t ch_;
  std::string tag_;
};

using AtomSeq = std::vector<Atom>;

AtomSeq atoms_from_chars(std::u32string_view text);
void append_chars(AtomSeq& seq, std::u32string_view text);
std::u32string strip_tags(const AtomSeq& seq);
/// Plain text rendering: characters verbatim, tags as `<name>`.
std::string render_atoms(const AtomSeq& seq);

// ---------------------------------------------------------------------------
// Entries, paradigms, dictionary
// ---------------------------------------------------------------------------

enum class Restriction : std::uint8_t { Bidirectional, LeftToRightOnly, RightToLeftOnly };

Restriction flipped(Restriction r);
/// Intersection of restrictions along a generating path; nullopt means the
/// path admits no direction and is dropped.
std::optional<Restriction> meet(Restriction a, Restriction b);

struct IdentityText {
  std::u32string text;
  bool operator==(const IdentityText&) const = default;
};

struct PairItem {
  AtomSeq left;   // surface side
  AtomSeq right;  // lexical side
  bool operator==(const PairItem&) const = default;
};

struct ParadigmRef {
  std::string name;
  bool operator==(const ParadigmRef&) const = default;
};

using EntryItem = std::variant<IdentityText, PairItem, ParadigmRef>;

struct Entry {
  std::optional<std::string> lemma;  // `lm` attribute, UTF-8
  Restriction restriction = Restriction::Bidirectional;
  std::vector<EntryItem> items;
  bool operator==(const Entry&) const = default;
};

struct Paradigm {
  std::string name;
  std::vector<Entry> entries;
  bool operator==(const Paradigm&) const = default;
};

struct Section {
  std::string id;
  std::string type = "standard";
  std::vector<Entry> entries;
  bool operator==(const Section&) const = default;
};

struct MonodixDictionary {
  std::set<char32_t> alphabet;
  std::vector<std::string> tag_defs;  // sdefs, document order
  std::vector<Paradigm> paradigms;    // document order
  std::vector<Section> sections;

  bool operator==(const MonodixDictionary&) const = default;
};

/// Name -> paradigm lookup built once per operation; the dictionary itself
/// stays a plain value.
using ParadigmIndex = std::unordered_map<std::string_view, const Paradigm*>;
ParadigmIndex build_paradigm_index(const MonodixDictionary& dict);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ViolationKind {
  UndefinedParadigm,
  ParadigmCycle,
  UndeclaredTag,
  EmptyEntry,
  EmptyParadigm,
  LemmaInParadigm,
  DuplicateTag,
  DuplicateParadigm,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string where;   // paradigm/section coordinates, e.g. "pardef চকু_n, entry 2"
  std::string detail;  // offending name or cycle path
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const MonodixDictionary& dict);

/// The right-to-left reading as data: pair sides exchanged, LR/RL
/// restrictions exchanged. Involutive.
MonodixDictionary flip(const MonodixDictionary& dict);

/// Paradigm names in dependency order (referenced before referencing).
/// Only defined for acyclic dictionaries; throws std::logic_error otherwise.
std::vector<std::string> paradigm_topological_order(const MonodixDictionary& dict);

}  // namespace mfst

#endif  // MFST_DICTIONARY_HPP
