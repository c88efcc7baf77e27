// dix_parser.cpp
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

#include "mfst/dix_parser.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "mfst/unicode.hpp"

namespace mfst {
namespace {

bool is_xml_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == ':';
}

struct Attr {
  std::string name;
  std::string value;
};

struct StartTag {
  std::string name;
  std::vector<Attr> attrs;
  bool self_closing = false;
  std::size_t line = 0;
  std::size_t col = 0;

  const std::string* find(std::string_view attr) const {
    for (const Attr& a : attrs)
      if (a.name == attr) return &a.value;
    return nullptr;
  }
};

class DixReader {
public:
  explicit DixReader(std::string_view xml) : p_(xml.data()), end_(xml.data() + xml.size()) {}

  MonodixDictionary parse();

private:
  const char* p_;
  const char* end_;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  [[noreturn]] void fail_at(const std::string& msg, const StartTag& tag) const {
    throw ParseError(msg, tag.line, tag.col);
  }

  bool eof() const { return p_ == end_; }
  char peek() const { return *p_; }
  bool starts_with(std::string_view s) const {
    return static_cast<std::size_t>(end_ - p_) >= s.size() && std::memcmp(p_, s.data(), s.size()) == 0;
  }

  void bump() {
    if (*p_ == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(*p_) & 0xC0) != 0x80) {
      ++col_;
    }
    ++p_;
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    bump();
  }

  char32_t take_char() {
    char32_t cp = 0;
    std::size_t len = uni::decode_one(p_, static_cast<std::size_t>(end_ - p_), cp);
    if (len == 0) fail("invalid UTF-8");
    for (std::size_t i = 0; i < len; ++i) bump();
    return cp;
  }

  bool skip_ws() {
    bool any = false;
    while (!eof() && is_xml_ws(peek())) {
      bump();
      any = true;
    }
    return any;
  }

  void skip_comment() {
    for (std::size_t i = 0; i < 4; ++i) bump();
    while (!starts_with("-->")) {
      if (eof()) fail("unterminated comment");
      bump();
    }
    for (std::size_t i = 0; i < 3; ++i) bump();
  }

  /// Whitespace and comments between elements.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<!--"))
        skip_comment();
      else
        return;
    }
  }

  char32_t parse_entity() {
    std::size_t at_line = line_;
    std::size_t at_col = col_;
    bump();
    std::string name;
    while (!eof() && peek() != ';') {
      if (name.size() > 6) throw ParseError("malformed entity", at_line, at_col);
      name.push_back(peek());
      bump();
    }
    if (eof()) fail("unterminated entity");
    bump();
    if (name == "amp") return U'&';
    if (name == "lt") return U'<';
    if (name == "gt") return U'>';
    if (name == "apos") return U'\'';
    if (name == "quot") return U'"';
    if (!name.empty() && name[0] == '#')
      throw ParseError("numeric character reference not supported", at_line, at_col);
    throw ParseError("unknown entity &" + name + ";", at_line, at_col);
  }

  std::string read_name() {
    if (eof() || !is_name_start(peek())) fail("expected name");
    std::string name;
    while (!eof() && is_name_char(peek())) {
      name.push_back(peek());
      bump();
    }
    return name;
  }

  std::string read_attr_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = peek();
    bump();
    std::u32string value;
    for (;;) {
      if (eof()) fail("unterminated attribute value");
      if (peek() == quote) {
        bump();
        break;
      }
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&')
        value.push_back(parse_entity());
      else
        value.push_back(take_char());
    }
    return uni::encode_utf8(uni::nfc(value));
  }

  StartTag read_start_tag() {
    StartTag tag;
    tag.line = line_;
    tag.col = col_;
    expect('<');
    tag.name = read_name();
    for (;;) {
      bool had_ws = skip_ws();
      if (eof()) fail("unterminated tag");
      if (peek() == '/') {
        bump();
        expect('>');
        tag.self_closing = true;
        break;
      }
      if (peek() == '>') {
        bump();
        break;
      }
      if (!had_ws) fail("expected whitespace before attribute");
      Attr attr;
      attr.name = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      attr.value = read_attr_value();
      if (tag.find(attr.name)) fail("duplicate attribute " + attr.name);
      tag.attrs.push_back(std::move(attr));
    }
    return tag;
  }

  void read_end_tag(std::string_view name) {
    expect('<');
    expect('/');
    std::string got = read_name();
    if (got != name) fail("expected </" + std::string(name) + ">, got </" + got + ">");
    skip_ws();
    expect('>');
  }

  void require_no_attrs(const StartTag& tag) {
    if (!tag.attrs.empty())
      fail_at("unexpected attribute " + tag.attrs.front().name + " on <" + tag.name + ">", tag);
  }

  const std::string& require_attr(const StartTag& tag, std::string_view name) {
    const std::string* value = tag.find(name);
    if (!value) fail_at("missing attribute " + std::string(name) + " on <" + tag.name + ">", tag);
    return *value;
  }

  void check_attrs(const StartTag& tag, std::initializer_list<std::string_view> allowed) {
    for (const Attr& a : tag.attrs) {
      bool ok = false;
      for (std::string_view name : allowed) ok = ok || a.name == name;
      if (!ok) fail_at("unexpected attribute " + a.name + " on <" + tag.name + ">", tag);
    }
  }

  /// Consumes an element with no content of its own: either self-closing or
  /// an immediately following end tag.
  void close_empty(const StartTag& tag) {
    if (!tag.self_closing) read_end_tag(tag.name);
  }

  /// Mixed content of i, l, r: text runs, plus <b/> as space and <s n=""/>
  /// where markup is admitted. Consumes up to and including the end tag.
  AtomSeq parse_inline(const std::string& elem, bool allow_markup) {
    AtomSeq seq;
    std::u32string text;
    auto flush = [&] {
      if (text.empty()) return;
      std::u32string norm = uni::nfc(text);
      append_chars(seq, norm);
      text.clear();
    };
    for (;;) {
      if (eof()) fail("unterminated <" + elem + ">");
      if (peek() == '<') {
        if (starts_with("<!--")) {
          skip_comment();
          continue;
        }
        if (starts_with("</")) {
          flush();
          read_end_tag(elem);
          return seq;
        }
        flush();
        StartTag tag = read_start_tag();
        if (tag.name == "b" && allow_markup) {
          require_no_attrs(tag);
          close_empty(tag);
          seq.push_back(Atom::character(U' '));
        } else if (tag.name == "s" && allow_markup) {
          check_attrs(tag, {"n"});
          std::string name = require_attr(tag, "n");
          close_empty(tag);
          seq.push_back(Atom::tag(std::move(name)));
        } else {
          fail_at("unexpected element <" + tag.name + "> in <" + elem + ">", tag);
        }
      } else if (peek() == '&') {
        text.push_back(parse_entity());
      } else {
        text.push_back(take_char());
      }
    }
  }

  PairItem parse_pair() {
    PairItem pair;
    skip_misc();
    StartTag l = read_start_tag();
    if (l.name != "l") fail_at("expected <l> in <p>", l);
    require_no_attrs(l);
    if (!l.self_closing) pair.left = parse_inline("l", true);
    skip_misc();
    StartTag r = read_start_tag();
    if (r.name != "r") fail_at("expected <r> in <p>", r);
    require_no_attrs(r);
    if (!r.self_closing) pair.right = parse_inline("r", true);
    skip_misc();
    read_end_tag("p");
    return pair;
  }

  Entry parse_entry(const StartTag& e_tag) {
    Entry entry;
    check_attrs(e_tag, {"lm", "r"});
    if (const std::string* lm = e_tag.find("lm")) entry.lemma = *lm;
    if (const std::string* r = e_tag.find("r")) {
      if (*r == "LR")
        entry.restriction = Restriction::LeftToRightOnly;
      else if (*r == "RL")
        entry.restriction = Restriction::RightToLeftOnly;
      else
        fail_at("attribute r must be LR or RL", e_tag);
    }
    if (e_tag.self_closing) return entry;
    for (;;) {
      skip_misc();
      if (eof()) fail("unterminated <e>");
      if (starts_with("</")) {
        read_end_tag("e");
        return entry;
      }
      if (peek() != '<') fail("unexpected text in <e>");
      StartTag tag = read_start_tag();
      if (tag.name == "i") {
        require_no_attrs(tag);
        AtomSeq seq;
        if (!tag.self_closing) seq = parse_inline("i", false);
        entry.items.push_back(IdentityText{strip_tags(seq)});
      } else if (tag.name == "p") {
        require_no_attrs(tag);
        if (tag.self_closing) fail_at("<p> requires <l> and <r>", tag);
        entry.items.push_back(parse_pair());
      } else if (tag.name == "par") {
        check_attrs(tag, {"n"});
        std::string name = require_attr(tag, "n");
        close_empty(tag);
        entry.items.push_back(ParadigmRef{std::move(name)});
      } else {
        fail_at("unexpected element <" + tag.name + "> in <e>", tag);
      }
    }
  }

  void parse_alphabet(const StartTag& tag, MonodixDictionary& dict) {
    require_no_attrs(tag);
    if (tag.self_closing) return;
    AtomSeq seq = parse_inline("alphabet", false);
    for (const Atom& a : seq) {
      char32_t c = a.ch();
      if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r') continue;
      dict.alphabet.insert(c);
    }
  }

  void parse_sdefs(const StartTag& sdefs_tag, MonodixDictionary& dict) {
    require_no_attrs(sdefs_tag);
    if (sdefs_tag.self_closing) return;
    for (;;) {
      skip_misc();
      if (eof()) fail("unterminated <sdefs>");
      if (starts_with("</")) {
        read_end_tag("sdefs");
        return;
      }
      if (peek() != '<') fail("unexpected text in <sdefs>");
      StartTag tag = read_start_tag();
      if (tag.name != "sdef") fail_at("unexpected element <" + tag.name + "> in <sdefs>", tag);
      check_attrs(tag, {"n", "c"});
      dict.tag_defs.push_back(require_attr(tag, "n"));
      close_empty(tag);
    }
  }

  void parse_pardef(const StartTag& pardef_tag, MonodixDictionary& dict) {
    check_attrs(pardef_tag, {"n"});
    Paradigm paradigm;
    paradigm.name = require_attr(pardef_tag, "n");
    if (!pardef_tag.self_closing) {
      for (;;) {
        skip_misc();
        if (eof()) fail("unterminated <pardef>");
        if (starts_with("</")) {
          read_end_tag("pardef");
          break;
        }
        if (peek() != '<') fail("unexpected text in <pardef>");
        StartTag tag = read_start_tag();
        if (tag.name != "e") fail_at("unexpected element <" + tag.name + "> in <pardef>", tag);
        paradigm.entries.push_back(parse_entry(tag));
      }
    }
    dict.paradigms.push_back(std::move(paradigm));
  }

  void parse_pardefs(const StartTag& pardefs_tag, MonodixDictionary& dict) {
    require_no_attrs(pardefs_tag);
    if (pardefs_tag.self_closing) return;
    for (;;) {
      skip_misc();
      if (eof()) fail("unterminated <pardefs>");
      if (starts_with("</")) {
        read_end_tag("pardefs");
        return;
      }
      if (peek() != '<') fail("unexpected text in <pardefs>");
      StartTag tag = read_start_tag();
      if (tag.name != "pardef") fail_at("unexpected element <" + tag.name + "> in <pardefs>", tag);
      parse_pardef(tag, dict);
    }
  }

  void parse_section(const StartTag& section_tag, MonodixDictionary& dict) {
    check_attrs(section_tag, {"id", "type"});
    Section section;
    section.id = require_attr(section_tag, "id");
    section.type = require_attr(section_tag, "type");
    if (!section_tag.self_closing) {
      for (;;) {
        skip_misc();
        if (eof()) fail("unterminated <section>");
        if (starts_with("</")) {
          read_end_tag("section");
          break;
        }
        if (peek() != '<') fail("unexpected text in <section>");
        StartTag tag = read_start_tag();
        if (tag.name != "e") fail_at("unexpected element <" + tag.name + "> in <section>", tag);
        section.entries.push_back(parse_entry(tag));
      }
    }
    dict.sections.push_back(std::move(section));
  }
};

MonodixDictionary DixReader::parse() {
  if (starts_with("\xEF\xBB\xBF"))
    for (int i = 0; i < 3; ++i) bump();
  skip_ws();
  if (starts_with("<?xml")) {
    while (!starts_with("?>")) {
      if (eof()) fail("unterminated XML declaration");
      bump();
    }
    bump();
    bump();
  }
  skip_misc();

  StartTag root = read_start_tag();
  if (root.name != "dictionary") fail_at("expected <dictionary> root element", root);
  require_no_attrs(root);

  MonodixDictionary dict;
  if (!root.self_closing) {
    // alphabet, sdefs, pardefs, then sections, each part optional
    int stage = 0;
    for (;;) {
      skip_misc();
      if (eof()) fail("unterminated <dictionary>");
      if (starts_with("</")) {
        read_end_tag("dictionary");
        break;
      }
      if (peek() != '<') fail("unexpected text in <dictionary>");
      StartTag tag = read_start_tag();
      if (tag.name == "alphabet" && stage < 1) {
        parse_alphabet(tag, dict);
        stage = 1;
      } else if (tag.name == "sdefs" && stage < 2) {
        parse_sdefs(tag, dict);
        stage = 2;
      } else if (tag.name == "pardefs" && stage < 3) {
        parse_pardefs(tag, dict);
        stage = 3;
      } else if (tag.name == "section") {
        parse_section(tag, dict);
        stage = 3;
      } else {
        fail_at("unexpected or misplaced element <" + tag.name + "> in <dictionary>", tag);
      }
    }
  }

  skip_misc();
  if (!eof()) fail("content after </dictionary>");
  return dict;
}

void escape_text(std::string& out, char32_t c) {
  switch (c) {
    case U'&': out += "&amp;"; break;
    case U'<': out += "&lt;"; break;
    case U'>': out += "&gt;"; break;
    default: uni::append_utf8(out, c);
  }
}

void escape_attr(std::string& out, std::string_view value) {
  for (char32_t c : uni::decode_utf8(value)) {
    if (c == U'"')
      out += "&quot;";
    else
      escape_text(out, c);
  }
}

void write_inline(std::string& out, const AtomSeq& seq) {
  for (const Atom& a : seq) {
    if (a.is_tag()) {
      out += "<s n=\"";
      escape_attr(out, a.tag_name());
      out += "\"/>";
    } else if (a.ch() == U' ') {
      out += "<b/>";
    } else {
      escape_text(out, a.ch());
    }
  }
}

void write_entry(std::string& out, const Entry& entry, const std::string& indent) {
  out += indent;
  out += "<e";
  if (entry.lemma) {
    out += " lm=\"";
    escape_attr(out, *entry.lemma);
    out += "\"";
  }
  if (entry.restriction == Restriction::LeftToRightOnly) out += " r=\"LR\"";
  if (entry.restriction == Restriction::RightToLeftOnly) out += " r=\"RL\"";
  if (entry.items.empty()) {
    out += "/>\n";
    return;
  }
  out += ">";
  for (const EntryItem& item : entry.items) {
    if (const auto* id = std::get_if<IdentityText>(&item)) {
      if (id->text.empty()) {
        out += "<i/>";
      } else {
        out += "<i>";
        write_inline(out, atoms_from_chars(id->text));
        out += "</i>";
      }
    } else if (const auto* pair = std::get_if<PairItem>(&item)) {
      out += "<p>";
      if (pair->left.empty()) {
        out += "<l/>";
      } else {
        out += "<l>";
        write_inline(out, pair->left);
        out += "</l>";
      }
      if (pair->right.empty()) {
        out += "<r/>";
      } else {
        out += "<r>";
        write_inline(out, pair->right);
        out += "</r>";
      }
      out += "</p>";
    } else if (const auto* ref = std::get_if<ParadigmRef>(&item)) {
      out += "<par n=\"";
      escape_attr(out, ref->name);
      out += "\"/>";
    }
  }
  out += "</e>\n";
}

}  // namespace

MonodixDictionary parse_dix(std::string_view xml) { return DixReader(xml).parse(); }

MonodixDictionary parse_dix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dix(buf.str());
}

std::string write_dix(const MonodixDictionary& dict) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<dictionary>\n";
  if (!dict.alphabet.empty()) {
    out += "  <alphabet>";
    for (char32_t c : dict.alphabet) escape_text(out, c);
    out += "</alphabet>\n";
  }
  if (!dict.tag_defs.empty()) {
    out += "  <sdefs>\n";
    for (const std::string& tag : dict.tag_defs) {
      out += "    <sdef n=\"";
      escape_attr(out, tag);
      out += "\"/>\n";
    }
    out += "  </sdefs>\n";
  }
  if (!dict.paradigms.empty()) {
    out += "  <pardefs>\n";
    for (const Paradigm& p : dict.paradigms) {
      out += "    <pardef n=\"";
      escape_attr(out, p.name);
      out += "\">\n";
      for (const Entry& e : p.entries) write_entry(out, e, "      ");
      out += "    </pardef>\n";
    }
    out += "  </pardefs>\n";
  }
  for (const Section& s : dict.sections) {
    out += "  <section id=\"";
    escape_attr(out, s.id);
    out += "\" type=\"";
    escape_attr(out, s.type);
    out += "\">\n";
    for (const Entry& e : s.entries) write_entry(out, e, "    ");
    out += "  </section>\n";
  }
  out += "</dictionary>\n";
  return out;
}

}  // namespace mfst
