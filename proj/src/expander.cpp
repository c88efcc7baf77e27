// expander.cpp
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

#include "mfst/expander.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mfst {
namespace {

using ItemCursor = std::pair<const std::vector<EntryItem>*, std::size_t>;

void truncate(AtomSeq& seq, std::size_t size) {
  seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(size), seq.end());
}

class Walker {
public:
  Walker(const ParadigmIndex& index, const PairSink& sink) : index_(index), sink_(sink) {}

  void entry(const Entry& e) {
    if (stopped_) return;
    surface_.clear();
    lexical_.clear();
    walk(e.items, 0, e.restriction);
  }

private:
  const ParadigmIndex& index_;
  const PairSink& sink_;
  AtomSeq surface_;
  AtomSeq lexical_;
  std::vector<ItemCursor> continuations_;
  std::vector<const Paradigm*> visiting_;
  bool stopped_ = false;

  void walk(const std::vector<EntryItem>& items, std::size_t pos, Restriction r) {
    if (stopped_) return;
    if (pos == items.size()) {
      if (continuations_.empty()) {
        if (!sink_(MorphPair{surface_, lexical_, r})) stopped_ = true;
        return;
      }
      ItemCursor next = continuations_.back();
      continuations_.pop_back();
      walk(*next.first, next.second, r);
      continuations_.push_back(next);
      return;
    }

    const EntryItem& item = items[pos];
    std::size_t surface_mark = surface_.size();
    std::size_t lexical_mark = lexical_.size();

    if (const auto* id = std::get_if<IdentityText>(&item)) {
      append_chars(surface_, id->text);
      append_chars(lexical_, id->text);
      walk(items, pos + 1, r);
    } else if (const auto* pair = std::get_if<PairItem>(&item)) {
      surface_.insert(surface_.end(), pair->left.begin(), pair->left.end());
      lexical_.insert(lexical_.end(), pair->right.begin(), pair->right.end());
      walk(items, pos + 1, r);
    } else {
      const auto& ref = std::get<ParadigmRef>(item);
      auto it = index_.find(ref.name);
      if (it == index_.end()) throw std::logic_error("undefined paradigm " + ref.name);
      const Paradigm* paradigm = it->second;
      if (std::find(visiting_.begin(), visiting_.end(), paradigm) != visiting_.end())
        throw std::logic_error("paradigm reference cycle through " + ref.name);
      visiting_.push_back(paradigm);
      continuations_.emplace_back(&items, pos + 1);
      for (const Entry& e : paradigm->entries) {
        if (stopped_) break;
        std::optional<Restriction> combined = meet(r, e.restriction);
        if (!combined) continue;
        walk(e.items, 0, *combined);
        truncate(surface_, surface_mark);
        truncate(lexical_, lexical_mark);
      }
      continuations_.pop_back();
      visiting_.pop_back();
    }

    truncate(surface_, surface_mark);
    truncate(lexical_, lexical_mark);
  }
};

}  // namespace

void expand_entry(const Entry& entry, const ParadigmIndex& paradigms, const PairSink& sink) {
  Walker walker(paradigms, sink);
  walker.entry(entry);
}

void expand(const MonodixDictionary& dict, const PairSink& sink) {
  ParadigmIndex index = build_paradigm_index(dict);
  Walker walker(index, sink);
  for (const Section& section : dict.sections)
    for (const Entry& e : section.entries) walker.entry(e);
}

std::vector<MorphPair> expand_all(const MonodixDictionary& dict) {
  std::vector<MorphPair> pairs;
  expand(dict, [&](const MorphPair& p) {
    pairs.push_back(p);
    return true;
  });
  return pairs;
}

std::string render_pair(const MorphPair& pair) {
  std::string out;
  if (pair.restriction == Restriction::LeftToRightOnly) out.push_back('>');
  if (pair.restriction == Restriction::RightToLeftOnly) out.push_back('<');
  out += render_atoms(pair.surface);
  out.push_back(':');
  out += render_atoms(pair.lexical);
  return out;
}

}  // namespace mfst
