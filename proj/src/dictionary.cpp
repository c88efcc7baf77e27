// dictionary.cpp
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

#include "mfst/dictionary.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "mfst/unicode.hpp"

namespace mfst {

SymbolId SymbolTable::intern_char(char32_t c) {
  auto it = by_char_.find(c);
  if (it != by_char_.end()) return it->second;
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(Symbol::character(c));
  by_char_.emplace(c, id);
  return id;
}

SymbolId SymbolTable::intern_tag(std::string_view name) {
  auto it = by_tag_.find(std::string(name));
  if (it != by_tag_.end()) return it->second;
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(Symbol::make_tag(std::string(name)));
  by_tag_.emplace(std::string(name), id);
  return id;
}

std::optional<SymbolId> SymbolTable::find_char(char32_t c) const {
  auto it = by_char_.find(c);
  if (it == by_char_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> SymbolTable::find_tag(std::string_view name) const {
  auto it = by_tag_.find(std::string(name));
  if (it == by_tag_.end()) return std::nullopt;
  return it->second;
}

std::set<char32_t> SymbolTable::characters() const {
  std::set<char32_t> out;
  for (const Symbol& s : symbols_)
    if (s.kind == SymbolKind::Character) out.insert(s.ch);
  return out;
}

AtomSeq atoms_from_chars(std::u32string_view text) {
  AtomSeq seq;
  append_chars(seq, text);
  return seq;
}

void append_chars(AtomSeq& seq, std::u32string_view text) {
  seq.reserve(seq.size() + text.size());
  for (char32_t c : text) seq.push_back(Atom::character(c));
}

std::u32string strip_tags(const AtomSeq& seq) {
  std::u32string out;
  for (const Atom& a : seq)
    if (a.is_char()) out.push_back(a.ch());
  return out;
}

std::string render_atoms(const AtomSeq& seq) {
  std::string out;
  for (const Atom& a : seq) {
    if (a.is_char()) {
      uni::append_utf8(out, a.ch());
    } else {
      out.push_back('<');
      out += a.tag_name();
      out.push_back('>');
    }
  }
  return out;
}

Restriction flipped(Restriction r) {
  switch (r) {
    case Restriction::LeftToRightOnly: return Restriction::RightToLeftOnly;
    case Restriction::RightToLeftOnly: return Restriction::LeftToRightOnly;
    case Restriction::Bidirectional: return Restriction::Bidirectional;
  }
  return Restriction::Bidirectional;
}

std::optional<Restriction> meet(Restriction a, Restriction b) {
  if (a == Restriction::Bidirectional) return b;
  if (b == Restriction::Bidirectional) return a;
  if (a == b) return a;
  return std::nullopt;
}

ParadigmIndex build_paradigm_index(const MonodixDictionary& dict) {
  ParadigmIndex index;
  index.reserve(dict.paradigms.size());
  for (const Paradigm& p : dict.paradigms) index.emplace(p.name, &p);
  return index;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UndefinedParadigm: return "undefined paradigm";
    case ViolationKind::ParadigmCycle: return "paradigm cycle";
    case ViolationKind::UndeclaredTag: return "undeclared tag";
    case ViolationKind::EmptyEntry: return "empty entry";
    case ViolationKind::EmptyParadigm: return "empty paradigm";
    case ViolationKind::LemmaInParadigm: return "lemma inside paradigm";
    case ViolationKind::DuplicateTag: return "duplicate tag definition";
    case ViolationKind::DuplicateParadigm: return "duplicate paradigm name";
  }
  return "unknown violation";
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << mfst::to_string(v.kind) << " at " << v.where;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << '\n';
  }
  return out.str();
}

namespace {

void check_entry_atoms(const Entry& entry, const std::string& where,
                       const std::unordered_set<std::string_view>& tags,
                       const ParadigmIndex& paradigms, std::vector<Violation>& out) {
  if (entry.items.empty()) {
    out.push_back({ViolationKind::EmptyEntry, where, ""});
    return;
  }
  auto check_seq = [&](const AtomSeq& seq) {
    for (const Atom& a : seq)
      if (a.is_tag() && !tags.contains(a.tag_name()))
        out.push_back({ViolationKind::UndeclaredTag, where, a.tag_name()});
  };
  for (const EntryItem& item : entry.items) {
    if (const auto* pair = std::get_if<PairItem>(&item)) {
      check_seq(pair->left);
      check_seq(pair->right);
    } else if (const auto* ref = std::get_if<ParadigmRef>(&item)) {
      if (!paradigms.contains(ref->name))
        out.push_back({ViolationKind::UndefinedParadigm, where, ref->name});
    }
  }
}

/// Paradigm reference DFS shared by cycle detection and topological order.
/// Returns false when a cycle is reached; `cycle` then holds its path.
bool visit_paradigm(const Paradigm& p, const ParadigmIndex& index,
                    std::unordered_map<const Paradigm*, int>& state,
                    std::vector<std::string>& order, std::vector<std::string>& cycle) {
  int& mark = state[&p];
  if (mark == 2) return true;
  if (mark == 1) {
    cycle.push_back(p.name);
    return false;
  }
  mark = 1;
  for (const Entry& e : p.entries) {
    for (const EntryItem& item : e.items) {
      const auto* ref = std::get_if<ParadigmRef>(&item);
      if (!ref) continue;
      auto it = index.find(ref->name);
      if (it == index.end()) continue;
      if (!visit_paradigm(*it->second, index, state, order, cycle)) {
        cycle.push_back(p.name);
        return false;
      }
    }
  }
  state[&p] = 2;
  order.push_back(p.name);
  return true;
}

}  // namespace

ValidationReport validate(const MonodixDictionary& dict) {
  ValidationReport report;
  auto& out = report.violations;

  std::unordered_set<std::string_view> tags;
  for (const std::string& t : dict.tag_defs)
    if (!tags.insert(t).second)
      out.push_back({ViolationKind::DuplicateTag, "sdefs", t});

  ParadigmIndex index = build_paradigm_index(dict);
  std::unordered_set<std::string_view> seen_paradigms;
  for (const Paradigm& p : dict.paradigms)
    if (!seen_paradigms.insert(p.name).second)
      out.push_back({ViolationKind::DuplicateParadigm, "pardefs", p.name});

  for (const Paradigm& p : dict.paradigms) {
    if (p.entries.empty())
      out.push_back({ViolationKind::EmptyParadigm, "pardef " + p.name, ""});
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
      std::string where = "pardef " + p.name + ", entry " + std::to_string(i + 1);
      if (p.entries[i].lemma)
        out.push_back({ViolationKind::LemmaInParadigm, where, *p.entries[i].lemma});
      check_entry_atoms(p.entries[i], where, tags, index, out);
    }
  }

  for (const Section& s : dict.sections) {
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      std::string where = "section " + s.id + ", entry " + std::to_string(i + 1);
      check_entry_atoms(s.entries[i], where, tags, index, out);
    }
  }

  std::unordered_map<const Paradigm*, int> state;
  std::vector<std::string> order, cycle;
  for (const Paradigm& p : dict.paradigms) {
    if (!visit_paradigm(p, index, state, order, cycle)) {
      std::reverse(cycle.begin(), cycle.end());
      std::string path;
      for (const std::string& name : cycle) {
        if (!path.empty()) path += " -> ";
        path += name;
      }
      out.push_back({ViolationKind::ParadigmCycle, "pardefs", path});
      break;
    }
  }

  return report;
}

namespace {

Entry flip_entry(const Entry& entry) {
  Entry out;
  out.lemma = entry.lemma;
  out.restriction = flipped(entry.restriction);
  out.items.reserve(entry.items.size());
  for (const EntryItem& item : entry.items) {
    if (const auto* pair = std::get_if<PairItem>(&item)) {
      out.items.push_back(PairItem{pair->right, pair->left});
    } else {
      out.items.push_back(item);
    }
  }
  return out;
}

}  // namespace

MonodixDictionary flip(const MonodixDictionary& dict) {
  MonodixDictionary out;
  out.alphabet = dict.alphabet;
  out.tag_defs = dict.tag_defs;
  out.paradigms.reserve(dict.paradigms.size());
  for (const Paradigm& p : dict.paradigms) {
    Paradigm q;
    q.name = p.name;
    q.entries.reserve(p.entries.size());
    for (const Entry& e : p.entries) q.entries.push_back(flip_entry(e));
    out.paradigms.push_back(std::move(q));
  }
  out.sections.reserve(dict.sections.size());
  for (const Section& s : dict.sections) {
    Section t;
    t.id = s.id;
    t.type = s.type;
    t.entries.reserve(s.entries.size());
    for (const Entry& e : s.entries) t.entries.push_back(flip_entry(e));
    out.sections.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> paradigm_topological_order(const MonodixDictionary& dict) {
  ParadigmIndex index = build_paradigm_index(dict);
  std::unordered_map<const Paradigm*, int> state;
  std::vector<std::string> order, cycle;
  for (const Paradigm& p : dict.paradigms)
    if (!visit_paradigm(p, index, state, order, cycle))
      throw std::logic_error("paradigm reference cycle");
  return order;
}

}  // namespace mfst
