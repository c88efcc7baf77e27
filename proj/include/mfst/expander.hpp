// mfst/expander.hpp
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

#ifndef MFST_EXPANDER_HPP
#define MFST_EXPANDER_HPP

#include <functional>
#include <string>
#include <vector>

#include "mfst/dictionary.hpp"

namespace mfst {

/// One fully expanded surface/lexical correspondence.
struct MorphPair {
  AtomSeq surface;
  AtomSeq lexical;
  Restriction restriction = Restriction::Bidirectional;
  bool operator==(const MorphPair&) const = default;
};

/// Receives pairs one at a time; return false to stop the walk early.
using PairSink = std::function<bool(const MorphPair&)>;

/// Walks one entry depth first in document order, splicing paradigm entries
/// at each reference. Restrictions meet along the path; paths whose meet is
/// empty are dropped. Throws std::logic_error on undefined paradigms or
/// reference cycles; validate first for a report.
void expand_entry(const Entry& entry, const ParadigmIndex& paradigms, const PairSink& sink);

/// expand_entry over all section entries in document order.
void expand(const MonodixDictionary& dict, const PairSink& sink);

/// Convenience wrapper collecting the full expansion.
std::vector<MorphPair> expand_all(const MonodixDictionary& dict);

/// `surface:lexical` with `>` / `<` prefixes marking one-directional pairs.
std::string render_pair(const MorphPair& pair);

}  // namespace mfst

#endif  // MFST_EXPANDER_HPP
