// stream.cpp
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

#include "mfst/stream.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "mfst/unicode.hpp"

namespace mfst {
namespace {

constexpr std::size_t kChunk = 1 << 16;

bool is_reserved(char32_t c) {
  switch (c) {
    case U'^':
    case U'$':
    case U'/':
    case U'*':
    case U'#':
    case U'\\':
    case U'<':
    case U'>': return true;
    default: return false;
  }
}

void append_escaped(std::string& out, char32_t c) {
  if (is_reserved(c)) out.push_back('\\');
  uni::append_utf8(out, c);
}

void append_escaped(std::string& out, std::u32string_view text) {
  for (char32_t c : text) append_escaped(out, c);
}

void append_escaped_atoms(std::string& out, const AtomSeq& seq) {
  for (const Atom& a : seq) {
    if (a.is_tag()) {
      out.push_back('<');
      out += a.tag_name();
      out.push_back('>');
    } else {
      append_escaped(out, a.ch());
    }
  }
}

/// Incremental UTF-8 decoder over an istream; invalid bytes come through
/// one at a time. Tracks the position of the last item and the next one.
class Utf8Source {
public:
  explicit Utf8Source(std::istream& in) : in_(in) {}

  enum class Item { Eof, Invalid, Scalar };

  Item next(char32_t& cp, std::uint8_t& raw) {
    ensure(4);
    std::size_t avail = buf_.size() - pos_;
    if (avail == 0) return Item::Eof;
    item_line_ = line_;
    item_col_ = col_;
    std::size_t len = uni::decode_one(buf_.data() + pos_, avail, cp);
    if (len == 0) {
      raw = static_cast<std::uint8_t>(buf_[pos_]);
      advance(1, raw == '\n');
      return Item::Invalid;
    }
    advance(len, cp == U'\n');
    return Item::Scalar;
  }

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  std::size_t item_line() const { return item_line_; }
  std::size_t item_col() const { return item_col_; }

private:
  std::istream& in_;
  std::string buf_;
  std::size_t pos_ = 0;
  bool eof_ = false;
  std::size_t line_ = 1, col_ = 1;
  std::size_t item_line_ = 1, item_col_ = 1;

  void ensure(std::size_t n) {
    while (buf_.size() - pos_ < n && !eof_) {
      if (pos_ > 0) {
        buf_.erase(0, pos_);
        pos_ = 0;
      }
      std::size_t old = buf_.size();
      buf_.resize(old + kChunk);
      in_.read(buf_.data() + old, static_cast<std::streamsize>(kChunk));
      buf_.resize(old + static_cast<std::size_t>(in_.gcount()));
      if (in_.gcount() == 0) eof_ = true;
    }
  }

  void advance(std::size_t len, bool newline) {
    pos_ += len;
    if (newline) {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
  }
};

void flush_chunk(std::string& buf, std::ostream& out, std::size_t threshold) {
  if (buf.size() >= threshold) {
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    buf.clear();
  }
}

void emit_analysis(std::string& out, const std::u32string& raw_word,
                   const LetterTransducer& analyzer) {
  std::u32string word = uni::nfc(raw_word);
  std::vector<AtomSeq> analyses = analyzer.lookup(atoms_from_chars(word));
  out.push_back('^');
  append_escaped(out, word);
  if (analyses.empty()) {
    out += "/*";
    append_escaped(out, word);
  } else {
    for (const AtomSeq& a : analyses) {
      out.push_back('/');
      append_escaped_atoms(out, a);
    }
  }
  out.push_back('$');
}

/// One scalar of generation-unit content, remembering whether it was
/// backslash-escaped in the input.
struct UnitChar {
  char32_t cp;
  bool escaped;
};

AtomSeq unit_chars_to_atoms(const std::vector<UnitChar>& content, std::size_t begin,
                            std::size_t end) {
  AtomSeq seq;
  std::u32string text;
  auto flush = [&] {
    if (text.empty()) return;
    std::u32string norm = uni::nfc(text);
    append_chars(seq, norm);
    text.clear();
  };
  for (std::size_t i = begin; i < end; ++i) {
    if (!content[i].escaped && content[i].cp == U'<') {
      flush();
      std::u32string name;
      ++i;
      while (i < end && !(!content[i].escaped && content[i].cp == U'>')) {
        name.push_back(content[i].cp);
        ++i;
      }
      seq.push_back(Atom::tag(uni::encode_utf8(uni::nfc(name))));
    } else {
      text.push_back(content[i].cp);
    }
  }
  flush();
  return seq;
}

void emit_generation(std::string& out, const std::vector<UnitChar>& content,
                     const LetterTransducer& generator) {
  // segment boundaries at unescaped '/'
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < content.size(); ++i) {
    if (!content[i].escaped && content[i].cp == U'/') {
      segments.emplace_back(begin, i);
      begin = i + 1;
    }
  }
  segments.emplace_back(begin, content.size());

  // analysis-shaped units carry the surface first; take the first analysis
  auto [seg_begin, seg_end] = segments.size() >= 2 ? segments[1] : segments[0];

  if (seg_begin < seg_end && !content[seg_begin].escaped && content[seg_begin].cp == U'*') {
    for (std::size_t i = seg_begin + 1; i < seg_end; ++i) uni::append_utf8(out, content[i].cp);
    return;
  }

  AtomSeq lexform = unit_chars_to_atoms(content, seg_begin, seg_end);
  std::vector<AtomSeq> results = generator.lookup(lexform);
  if (results.empty()) {
    out.push_back('#');
    out += render_atoms(lexform);
  } else {
    out += render_atoms(results.front());
  }
}

}  // namespace

std::vector<StreamToken> tokenize(std::string_view text, const Alphabet& alphabet) {
  std::vector<StreamToken> tokens;
  auto push = [&](StreamToken::Kind kind, std::size_t begin, std::size_t end) {
    if (begin == end) return;
    if (!tokens.empty() && tokens.back().kind == kind)
      tokens.back().text.append(text.substr(begin, end - begin));
    else
      tokens.push_back({kind, std::string(text.substr(begin, end - begin))});
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = 0;
    std::size_t len = uni::decode_one(text.data() + pos, text.size() - pos, cp);
    if (len == 0) {
      push(StreamToken::Kind::Separator, pos, pos + 1);
      ++pos;
      continue;
    }
    auto kind =
        alphabet.contains(cp) ? StreamToken::Kind::Word : StreamToken::Kind::Separator;
    push(kind, pos, pos + len);
    pos += len;
  }
  return tokens;
}

AtomSeq parse_lexform(std::string_view text) {
  std::vector<UnitChar> content;
  std::size_t pos = 0;
  bool escaped = false;
  while (pos < text.size()) {
    char32_t cp = 0;
    std::size_t len = uni::decode_one(text.data() + pos, text.size() - pos, cp);
    if (len == 0) throw uni::Utf8Error(pos);
    pos += len;
    if (!escaped && cp == U'\\') {
      escaped = true;
      continue;
    }
    content.push_back({cp, escaped});
    escaped = false;
  }
  return unit_chars_to_atoms(content, 0, content.size());
}

void analyze_stream(std::istream& in, std::ostream& out, const LetterTransducer& analyzer) {
  if (analyzer.direction != CompileDirection::LeftToRight)
    throw std::invalid_argument("analysis requires a left-to-right transducer");
  Alphabet alphabet = Alphabet::from_transducer(analyzer);
  Utf8Source src(in);
  std::string buf;
  std::u32string word;

  char32_t cp = 0;
  std::uint8_t raw = 0;
  for (;;) {
    Utf8Source::Item item = src.next(cp, raw);
    if (item == Utf8Source::Item::Eof) break;
    if (item == Utf8Source::Item::Scalar && alphabet.contains(cp)) {
      word.push_back(cp);
      continue;
    }
    if (!word.empty()) {
      emit_analysis(buf, word, analyzer);
      word.clear();
    }
    if (item == Utf8Source::Item::Invalid)
      buf.push_back(static_cast<char>(raw));
    else
      append_escaped(buf, cp);
    flush_chunk(buf, out, kChunk);
  }
  if (!word.empty()) emit_analysis(buf, word, analyzer);
  flush_chunk(buf, out, 1);
}

std::string analyze_stream(std::string_view text, const LetterTransducer& analyzer) {
  std::istringstream in{std::string(text)};
  std::ostringstream out;
  analyze_stream(in, out, analyzer);
  return out.str();
}

void generate_stream(std::istream& in, std::ostream& out, const LetterTransducer& generator) {
  if (generator.direction != CompileDirection::RightToLeft)
    throw std::invalid_argument("generation requires a right-to-left transducer");
  Utf8Source src(in);
  std::string buf;
  std::vector<UnitChar> content;
  bool in_unit = false;
  std::size_t unit_line = 0, unit_col = 0;

  char32_t cp = 0;
  std::uint8_t raw = 0;
  for (;;) {
    Utf8Source::Item item = src.next(cp, raw);
    if (item == Utf8Source::Item::Eof) break;
    if (item == Utf8Source::Item::Invalid) {
      if (in_unit)
        throw MalformedUnit("invalid UTF-8 inside unit", src.item_line(), src.item_col());
      buf.push_back(static_cast<char>(raw));
      flush_chunk(buf, out, kChunk);
      continue;
    }
    bool escaped = false;
    if (cp == U'\\') {
      Utf8Source::Item follow = src.next(cp, raw);
      if (follow == Utf8Source::Item::Invalid)
        throw MalformedUnit("invalid UTF-8 after backslash", src.item_line(), src.item_col());
      if (follow == Utf8Source::Item::Eof) {
        cp = U'\\';
      } else {
        escaped = true;
      }
    }
    if (in_unit) {
      if (!escaped && cp == U'^')
        throw MalformedUnit("unexpected '^' inside unit", src.item_line(), src.item_col());
      if (!escaped && cp == U'$') {
        emit_generation(buf, content, generator);
        in_unit = false;
        flush_chunk(buf, out, kChunk);
      } else {
        content.push_back({cp, escaped});
      }
    } else {
      if (!escaped && cp == U'^') {
        in_unit = true;
        content.clear();
        unit_line = src.item_line();
        unit_col = src.item_col();
      } else if (!escaped && cp == U'$') {
        throw MalformedUnit("unexpected '$' outside unit", src.item_line(), src.item_col());
      } else {
        uni::append_utf8(buf, cp);
        flush_chunk(buf, out, kChunk);
      }
    }
  }
  if (in_unit) throw MalformedUnit("unterminated unit", unit_line, unit_col);
  flush_chunk(buf, out, 1);
}

std::string generate_stream(std::string_view text, const LetterTransducer& generator) {
  std::istringstream in{std::string(text)};
  std::ostringstream out;
  generate_stream(in, out, generator);
  return out.str();
}

}  // namespace mfst
