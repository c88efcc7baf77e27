// mfst/transducer.hpp
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

#ifndef MFST_TRANSDUCER_HPP
#define MFST_TRANSDUCER_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfst/dictionary.hpp"

namespace mfst {

enum class CompileDirection : std::uint8_t { LeftToRight, RightToLeft };

/// True when an entry restriction lets the pair into a compile direction.
bool admits(Restriction r, CompileDirection dir);

struct Transition {
  SymbolId in = kEpsilonId;
  SymbolId out = kEpsilonId;
  std::uint32_t target = 0;
  auto operator<=>(const Transition&) const = default;
};

/// Letter transducer over (input, output) symbol pairs. State 0 is initial;
/// per-state transitions are sorted by (in, out, target); finals ascend.
/// Immutable once built; lookup is safe for concurrent readers.
struct LetterTransducer {
  SymbolTable symbols;
  std::vector<std::vector<Transition>> states{{}};
  std::vector<std::uint32_t> finals;
  CompileDirection direction = CompileDirection::LeftToRight;
  bool minimized = false;

  bool is_final(std::uint32_t state) const;
  std::uint64_t transition_count() const;

  /// All output sequences over accepting paths that consume exactly `input`,
  /// epsilons removed, deduplicated, lexicographic by symbol id.
  std::vector<std::vector<SymbolId>> lookup_ids(std::span<const SymbolId> input) const;

  /// Atom-level wrapper; atoms not present in the symbol table make the
  /// result empty.
  std::vector<AtomSeq> lookup(const AtomSeq& input) const;

  AtomSeq to_atoms(std::span<const SymbolId> ids) const;

  bool operator==(const LetterTransducer&) const = default;
};

/// Builds the trie of aligned (in, out) paths over all pairs the direction
/// admits. LeftToRight consumes surface text (analyzer); RightToLeft
/// consumes lexical forms (generator). Requires a valid dictionary.
LetterTransducer compile(const MonodixDictionary& dict, CompileDirection dir);

/// Minimal deterministic automaton over (in, out) labels accepting the same
/// label-sequence language, in canonical state order; idempotent. Throws
/// std::logic_error on a cyclic input machine.
LetterTransducer minimize(const LetterTransducer& t);

enum class LoadErrorKind {
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  DanglingStateId,
  DanglingSymbolId,
  MalformedData,
};

std::string_view to_string(LoadErrorKind kind);

class LoadError : public std::runtime_error {
public:
  LoadError(LoadErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
        kind_(kind) {}

  LoadErrorKind kind() const { return kind_; }

private:
  LoadErrorKind kind_;
};

/// Deterministic little-endian binary image; load(save(t)) == t.
std::vector<std::uint8_t> save(const LetterTransducer& t);
LetterTransducer load(std::span<const std::uint8_t> bytes);

}  // namespace mfst

#endif  // MFST_TRANSDUCER_HPP
