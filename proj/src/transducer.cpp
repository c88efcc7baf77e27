// transducer.cpp
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

#include "mfst/transducer.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>
#include <utility>

#include "mfst/unicode.hpp"

namespace mfst {

bool admits(Restriction r, CompileDirection dir) {
  switch (r) {
    case Restriction::Bidirectional: return true;
    case Restriction::LeftToRightOnly: return dir == CompileDirection::LeftToRight;
    case Restriction::RightToLeftOnly: return dir == CompileDirection::RightToLeft;
  }
  return false;
}

bool LetterTransducer::is_final(std::uint32_t state) const {
  return std::binary_search(finals.begin(), finals.end(), state);
}

std::uint64_t LetterTransducer::transition_count() const {
  std::uint64_t n = 0;
  for (const auto& from : states) n += from.size();
  return n;
}

std::vector<std::vector<SymbolId>> LetterTransducer::lookup_ids(
    std::span<const SymbolId> input) const {
  for (SymbolId id : input)
    if (id == kEpsilonId || id >= symbols.size()) return {};

  std::set<std::vector<SymbolId>> results;
  std::vector<SymbolId> out;
  const std::size_t n = input.size();

  auto dfs = [&](auto&& self, std::uint32_t state, std::size_t pos, std::size_t eps_depth) -> void {
    if (eps_depth > states.size()) throw std::logic_error("epsilon cycle in transducer");
    if (pos == n && is_final(state)) results.insert(out);
    const auto& trans = states[state];
    for (const Transition& tr : trans) {
      if (tr.in != kEpsilonId) break;
      if (tr.out != kEpsilonId) out.push_back(tr.out);
      self(self, tr.target, pos, eps_depth + 1);
      if (tr.out != kEpsilonId) out.pop_back();
    }
    if (pos < n) {
      SymbolId want = input[pos];
      auto it = std::lower_bound(trans.begin(), trans.end(), want,
                                 [](const Transition& tr, SymbolId w) { return tr.in < w; });
      for (; it != trans.end() && it->in == want; ++it) {
        if (it->out != kEpsilonId) out.push_back(it->out);
        self(self, it->target, pos + 1, 0);
        if (it->out != kEpsilonId) out.pop_back();
      }
    }
  };
  dfs(dfs, 0, 0, 0);
  return {results.begin(), results.end()};
}

std::vector<AtomSeq> LetterTransducer::lookup(const AtomSeq& input) const {
  std::vector<SymbolId> ids;
  ids.reserve(input.size());
  for (const Atom& a : input) {
    std::optional<SymbolId> id =
        a.is_tag() ? symbols.find_tag(a.tag_name()) : symbols.find_char(a.ch());
    if (!id) return {};
    ids.push_back(*id);
  }
  std::vector<AtomSeq> out;
  for (const std::vector<SymbolId>& seq : lookup_ids(ids)) out.push_back(to_atoms(seq));
  return out;
}

AtomSeq LetterTransducer::to_atoms(std::span<const SymbolId> ids) const {
  AtomSeq seq;
  seq.reserve(ids.size());
  for (SymbolId id : ids) {
    const Symbol& s = symbols.at(id);
    seq.push_back(s.kind == SymbolKind::Tag ? Atom::tag(s.tag) : Atom::character(s.ch));
  }
  return seq;
}

namespace {

using ItemCursor = std::pair<const std::vector<EntryItem>*, std::size_t>;

class Compiler {
public:
  Compiler(const MonodixDictionary& dict, CompileDirection dir)
      : index_(build_paradigm_index(dict)), dir_(dir) {
    t_.direction = dir;
    final_.push_back(0);
  }

  LetterTransducer run(const MonodixDictionary& dict) {
    for (const Section& section : dict.sections) {
      for (const Entry& e : section.entries) {
        if (!admits(e.restriction, dir_)) continue;
        walk(e.items, 0, 0, e.restriction);
      }
    }
    for (std::uint32_t s = 0; s < final_.size(); ++s)
      if (final_[s]) t_.finals.push_back(s);
    for (auto& trans : t_.states) std::sort(trans.begin(), trans.end());
    return std::move(t_);
  }

private:
  ParadigmIndex index_;
  CompileDirection dir_;
  LetterTransducer t_;
  std::vector<char> final_;
  std::vector<ItemCursor> continuations_;
  std::vector<const Paradigm*> visiting_;

  std::uint32_t extend(std::uint32_t state, SymbolId in, SymbolId out) {
    for (const Transition& tr : t_.states[state])
      if (tr.in == in && tr.out == out) return tr.target;
    auto next = static_cast<std::uint32_t>(t_.states.size());
    t_.states[state].push_back({in, out, next});
    t_.states.emplace_back();
    final_.push_back(0);
    return next;
  }

  SymbolId intern(const Atom& a) {
    return a.is_tag() ? t_.symbols.intern_tag(a.tag_name()) : t_.symbols.intern_char(a.ch());
  }

  void walk(const std::vector<EntryItem>& items, std::size_t pos, std::uint32_t state,
            Restriction r) {
    if (pos == items.size()) {
      if (continuations_.empty()) {
        final_[state] = 1;
        return;
      }
      ItemCursor next = continuations_.back();
      continuations_.pop_back();
      walk(*next.first, next.second, state, r);
      continuations_.push_back(next);
      return;
    }

    const EntryItem& item = items[pos];
    if (const auto* id = std::get_if<IdentityText>(&item)) {
      for (char32_t c : id->text) {
        SymbolId sym = t_.symbols.intern_char(c);
        state = extend(state, sym, sym);
      }
      walk(items, pos + 1, state, r);
    } else if (const auto* pair = std::get_if<PairItem>(&item)) {
      const AtomSeq& in_side = dir_ == CompileDirection::LeftToRight ? pair->left : pair->right;
      const AtomSeq& out_side = dir_ == CompileDirection::LeftToRight ? pair->right : pair->left;
      std::size_t len = std::max(in_side.size(), out_side.size());
      for (std::size_t i = 0; i < len; ++i) {
        SymbolId in = i < in_side.size() ? intern(in_side[i]) : kEpsilonId;
        SymbolId out = i < out_side.size() ? intern(out_side[i]) : kEpsilonId;
        state = extend(state, in, out);
      }
      walk(items, pos + 1, state, r);
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
        std::optional<Restriction> combined = meet(r, e.restriction);
        if (!combined || !admits(*combined, dir_)) continue;
        walk(e.items, 0, state, *combined);
      }
      continuations_.pop_back();
      visiting_.pop_back();
    }
  }
};

}  // namespace

LetterTransducer compile(const MonodixDictionary& dict, CompileDirection dir) {
  return Compiler(dict, dir).run(dict);
}

namespace {

LetterTransducer empty_like(const LetterTransducer& t) {
  LetterTransducer out;
  out.symbols = t.symbols;
  out.direction = t.direction;
  out.minimized = true;
  return out;
}

/// DFS finish order over kept states; throws on a cycle.
std::vector<std::uint32_t> topological_finish_order(const LetterTransducer& t,
                                                    const std::vector<char>& keep) {
  std::vector<char> color(t.states.size(), 0);
  std::vector<std::uint32_t> order;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  stack.emplace_back(0, 0);
  color[0] = 1;
  while (!stack.empty()) {
    auto& [state, edge] = stack.back();
    const auto& trans = t.states[state];
    bool descended = false;
    while (edge < trans.size()) {
      std::uint32_t target = trans[edge].target;
      ++edge;
      if (!keep[target]) continue;
      if (color[target] == 1) throw std::logic_error("cycle in transducer");
      if (color[target] == 0) {
        color[target] = 1;
        stack.emplace_back(target, 0);
        descended = true;
        break;
      }
    }
    if (descended) continue;
    color[state] = 2;
    order.push_back(state);
    stack.pop_back();
  }
  return order;
}

}  // namespace

LetterTransducer minimize(const LetterTransducer& t) {
  const std::size_t n = t.states.size();
  if (n == 0 || t.finals.empty()) return empty_like(t);

  std::vector<char> reach(n, 0);
  {
    std::vector<std::uint32_t> stack{0};
    reach[0] = 1;
    while (!stack.empty()) {
      std::uint32_t s = stack.back();
      stack.pop_back();
      for (const Transition& tr : t.states[s]) {
        if (!reach[tr.target]) {
          reach[tr.target] = 1;
          stack.push_back(tr.target);
        }
      }
    }
  }

  std::vector<char> keep(n, 0);
  {
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t s = 0; s < n; ++s)
      for (const Transition& tr : t.states[s]) rev[tr.target].push_back(s);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t f : t.finals) {
      if (f < n && !keep[f]) {
        keep[f] = 1;
        stack.push_back(f);
      }
    }
    while (!stack.empty()) {
      std::uint32_t s = stack.back();
      stack.pop_back();
      for (std::uint32_t p : rev[s]) {
        if (!keep[p]) {
          keep[p] = 1;
          stack.push_back(p);
        }
      }
    }
    for (std::uint32_t s = 0; s < n; ++s) keep[s] = keep[s] && reach[s];
  }
  if (!keep[0]) return empty_like(t);

  // children finish first, so signatures see final target classes
  std::vector<std::uint32_t> finish = topological_finish_order(t, keep);

  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::vector<std::uint32_t> class_of(n, kUnset);
  std::map<std::vector<std::uint64_t>, std::uint32_t> signature_class;
  std::vector<std::vector<Transition>> class_trans;
  std::vector<char> class_final;

  for (std::uint32_t s : finish) {
    std::vector<Transition> triples;
    for (const Transition& tr : t.states[s])
      if (keep[tr.target]) triples.push_back({tr.in, tr.out, class_of[tr.target]});
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

    bool is_final = t.is_final(s);
    std::vector<std::uint64_t> key;
    key.reserve(1 + 2 * triples.size());
    key.push_back(is_final ? 1 : 0);
    for (const Transition& tr : triples) {
      key.push_back((static_cast<std::uint64_t>(tr.in) << 32) | tr.out);
      key.push_back(tr.target);
    }

    auto [it, inserted] =
        signature_class.try_emplace(std::move(key), static_cast<std::uint32_t>(class_trans.size()));
    if (inserted) {
      class_trans.push_back(std::move(triples));
      class_final.push_back(is_final ? 1 : 0);
    }
    class_of[s] = it->second;
  }

  // canonical numbering: preorder from the initial class along sorted labels
  const auto class_count = static_cast<std::uint32_t>(class_trans.size());
  std::vector<std::uint32_t> new_id(class_count, kUnset);
  {
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack{class_of[0]};
    while (!stack.empty()) {
      std::uint32_t c = stack.back();
      stack.pop_back();
      if (new_id[c] != kUnset) continue;
      new_id[c] = next++;
      const auto& trans = class_trans[c];
      for (auto it = trans.rbegin(); it != trans.rend(); ++it)
        if (new_id[it->target] == kUnset) stack.push_back(it->target);
    }
  }

  LetterTransducer out;
  out.symbols = t.symbols;
  out.direction = t.direction;
  out.minimized = true;
  out.states.assign(class_count, {});
  for (std::uint32_t c = 0; c < class_count; ++c) {
    auto& dest = out.states[new_id[c]];
    dest.reserve(class_trans[c].size());
    for (const Transition& tr : class_trans[c]) dest.push_back({tr.in, tr.out, new_id[tr.target]});
    std::sort(dest.begin(), dest.end());
    if (class_final[c]) out.finals.push_back(new_id[c]);
  }
  std::sort(out.finals.begin(), out.finals.end());
  return out;
}

namespace {

constexpr std::uint8_t kMagic[4] = {0x4D, 0x46, 0x53, 0x54};

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteReader {
public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw LoadError(LoadErrorKind::TruncatedFile, "");
    std::span<const std::uint8_t> out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint8_t u8() { return take(1)[0]; }

  std::uint16_t u16() {
    auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }

  std::uint32_t u32() {
    auto b = take(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  std::uint64_t u64() {
    std::uint64_t lo = u32();
    std::uint64_t hi = u32();
    return lo | (hi << 32);
  }

  bool done() const { return pos_ == bytes_.size(); }
  std::size_t size() const { return bytes_.size(); }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(LoadErrorKind kind) {
  switch (kind) {
    case LoadErrorKind::BadMagic: return "bad magic";
    case LoadErrorKind::UnsupportedVersion: return "unsupported version";
    case LoadErrorKind::TruncatedFile: return "truncated file";
    case LoadErrorKind::DanglingStateId: return "dangling state id";
    case LoadErrorKind::DanglingSymbolId: return "dangling symbol id";
    case LoadErrorKind::MalformedData: return "malformed data";
  }
  return "unknown load error";
}

std::vector<std::uint8_t> save(const LetterTransducer& t) {
  std::vector<std::uint8_t> b;
  b.insert(b.end(), kMagic, kMagic + 4);
  put_u16(b, 1);
  std::uint16_t flags = 0;
  if (t.minimized) flags |= 1;
  if (t.direction == CompileDirection::RightToLeft) flags |= 2;
  put_u16(b, flags);

  put_u32(b, static_cast<std::uint32_t>(t.symbols.size() - 1));
  for (SymbolId id = 1; id < t.symbols.size(); ++id) {
    const Symbol& s = t.symbols.at(id);
    std::string bytes;
    if (s.kind == SymbolKind::Tag) bytes = s.tag;
    else uni::append_utf8(bytes, s.ch);
    b.push_back(s.kind == SymbolKind::Tag ? 1 : 0);
    put_u32(b, static_cast<std::uint32_t>(bytes.size()));
    b.insert(b.end(), bytes.begin(), bytes.end());
  }

  put_u32(b, static_cast<std::uint32_t>(t.states.size()));
  put_u32(b, static_cast<std::uint32_t>(t.finals.size()));
  for (std::uint32_t f : t.finals) put_u32(b, f);

  put_u64(b, t.transition_count());
  for (std::uint32_t s = 0; s < t.states.size(); ++s) {
    for (const Transition& tr : t.states[s]) {
      put_u32(b, s);
      put_u32(b, tr.in);
      put_u32(b, tr.out);
      put_u32(b, tr.target);
    }
  }
  return b;
}

LetterTransducer load(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw LoadError(LoadErrorKind::BadMagic, "");
  std::uint16_t version = r.u16();
  if (version != 1)
    throw LoadError(LoadErrorKind::UnsupportedVersion, "version " + std::to_string(version));
  std::uint16_t flags = r.u16();
  if (flags & ~std::uint16_t{3}) throw LoadError(LoadErrorKind::MalformedData, "unknown flags");

  LetterTransducer t;
  t.minimized = (flags & 1) != 0;
  t.direction = (flags & 2) ? CompileDirection::RightToLeft : CompileDirection::LeftToRight;

  std::uint32_t symbol_count = r.u32();
  for (std::uint32_t i = 0; i < symbol_count; ++i) {
    std::uint8_t kind = r.u8();
    if (kind > 1) throw LoadError(LoadErrorKind::MalformedData, "bad symbol kind");
    std::uint32_t len = r.u32();
    auto raw = r.take(len);
    std::string text(reinterpret_cast<const char*>(raw.data()), raw.size());
    std::u32string decoded;
    try {
      decoded = uni::decode_utf8(text);
    } catch (const uni::Utf8Error&) {
      throw LoadError(LoadErrorKind::MalformedData, "symbol is not valid UTF-8");
    }
    if (kind == 0) {
      if (decoded.size() != 1)
        throw LoadError(LoadErrorKind::MalformedData, "character symbol length");
      if (t.symbols.find_char(decoded[0]))
        throw LoadError(LoadErrorKind::MalformedData, "duplicate symbol");
      t.symbols.intern_char(decoded[0]);
    } else {
      if (t.symbols.find_tag(text)) throw LoadError(LoadErrorKind::MalformedData, "duplicate symbol");
      t.symbols.intern_tag(text);
    }
  }

  std::uint32_t state_count = r.u32();
  if (state_count == 0) throw LoadError(LoadErrorKind::MalformedData, "no states");
  if (state_count > bytes.size() + 1)
    throw LoadError(LoadErrorKind::MalformedData, "implausible state count");
  t.states.assign(state_count, {});

  std::uint32_t final_count = r.u32();
  for (std::uint32_t i = 0; i < final_count; ++i) {
    std::uint32_t f = r.u32();
    if (f >= state_count) throw LoadError(LoadErrorKind::DanglingStateId, "final state");
    if (!t.finals.empty() && f <= t.finals.back())
      throw LoadError(LoadErrorKind::MalformedData, "final states not ascending");
    t.finals.push_back(f);
  }

  std::uint64_t transition_count = r.u64();
  std::uint32_t prev[4] = {0, 0, 0, 0};
  for (std::uint64_t i = 0; i < transition_count; ++i) {
    std::uint32_t source = r.u32();
    std::uint32_t in = r.u32();
    std::uint32_t out = r.u32();
    std::uint32_t target = r.u32();
    if (source >= state_count || target >= state_count)
      throw LoadError(LoadErrorKind::DanglingStateId, "transition endpoint");
    if (in > symbol_count || out > symbol_count)
      throw LoadError(LoadErrorKind::DanglingSymbolId, "transition label");
    std::uint32_t cur[4] = {source, in, out, target};
    if (i > 0 && !std::lexicographical_compare(prev, prev + 4, cur, cur + 4))
      throw LoadError(LoadErrorKind::MalformedData, "transitions not sorted");
    std::memcpy(prev, cur, sizeof(cur));
    t.states[source].push_back({in, out, target});
  }

  if (!r.done()) throw LoadError(LoadErrorKind::MalformedData, "trailing data");
  return t;
}

}  // namespace mfst
