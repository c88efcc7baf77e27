// eval.cpp
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

#include "mfst/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "mfst/expander.hpp"
#include "mfst/unicode.hpp"

namespace mfst {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (std::string_view& line : lines)
    if (line.ends_with('\r')) line.remove_suffix(1);
  return lines;
}

}  // namespace

std::set<std::string> parse_stopwords(std::string_view text) {
  std::set<std::string> words;
  for (std::string_view line : split_lines(text))
    if (!line.empty()) words.insert(uni::nfc_utf8(line));
  return words;
}

std::vector<StreamToken> clean_corpus(std::string_view text, const CleaningConfig& config,
                                      const Alphabet& alphabet) {
  std::vector<StreamToken> out;
  for (StreamToken& token : tokenize(text, alphabet)) {
    if (token.kind == StreamToken::Kind::Word) {
      std::string norm = uni::nfc_utf8(token.text);
      if (config.stopwords.contains(norm)) continue;
      out.push_back({StreamToken::Kind::Word, std::move(norm)});
    } else {
      if (config.strip_delimiters) continue;
      if (config.collapse_whitespace) {
        std::string collapsed;
        bool in_space = false;
        std::size_t pos = 0;
        while (pos < token.text.size()) {
          char32_t cp = 0;
          std::size_t len = uni::decode_one(token.text.data() + pos, token.text.size() - pos, cp);
          if (len == 0) {
            collapsed.push_back(token.text[pos]);
            in_space = false;
            ++pos;
            continue;
          }
          if (uni::is_space(cp)) {
            if (!in_space) collapsed.push_back(' ');
            in_space = true;
          } else {
            uni::append_utf8(collapsed, cp);
            in_space = false;
          }
          pos += len;
        }
        token.text = std::move(collapsed);
      }
      out.push_back(std::move(token));
    }
  }
  return out;
}

std::vector<std::string> word_texts(const std::vector<StreamToken>& tokens) {
  std::vector<std::string> out;
  for (const StreamToken& t : tokens)
    if (t.kind == StreamToken::Kind::Word) out.push_back(t.text);
  return out;
}

std::vector<GoldRecord> parse_gold_tsv(std::string_view text) {
  std::vector<GoldRecord> records;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(text)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw std::runtime_error("gold line " + std::to_string(lineno) + ": missing tab");
    std::string_view surface = line.substr(0, tab);
    std::string_view expected = line.substr(tab + 1);
    if (surface.empty() || expected.empty())
      throw std::runtime_error("gold line " + std::to_string(lineno) + ": empty field");
    records.push_back({uni::nfc_utf8(surface), std::string(expected)});
  }
  return records;
}

std::string EvalReport::accuracy_text() const {
  std::uint64_t tenths = accuracy_tenths();
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string EvalReport::to_table() const {
  std::string out;
  out += "Total words\t" + std::to_string(total) + "\n";
  out += "Correctly recognize\t" + std::to_string(correct) + "\n";
  out += "Wrongly recognize\t" + std::to_string(wrong) + "\n";
  out += "Accuracy\t" + accuracy_text() + "\n";
  return out;
}

EvalReport evaluate(const std::vector<std::string>& tokens, const std::vector<GoldRecord>& gold,
                    const LetterTransducer& analyzer) {
  if (tokens.empty() && gold.empty()) throw EmptyEvaluation();
  if (tokens.size() != gold.size())
    throw AlignmentError(std::min(tokens.size(), gold.size()));

  EvalReport report;
  report.total = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != gold[i].surface) throw AlignmentError(i);
    AtomSeq surface = atoms_from_chars(uni::decode_utf8(tokens[i]));
    AtomSeq expected = parse_lexform(gold[i].expected);
    std::vector<AtomSeq> analyses = analyzer.lookup(surface);
    if (std::find(analyses.begin(), analyses.end(), expected) != analyses.end())
      ++report.correct;
  }
  report.wrong = report.total - report.correct;
  return report;
}

std::vector<std::pair<std::string, std::uint64_t>> dict_stats(const MonodixDictionary& dict) {
  ParadigmIndex index = build_paradigm_index(dict);
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const Section& section : dict.sections) {
    for (const Entry& entry : section.entries) {
      std::string category;
      expand_entry(entry, index, [&](const MorphPair& pair) {
        for (const Atom& a : pair.lexical) {
          if (a.is_tag()) {
            category = a.tag_name();
            return false;
          }
        }
        return true;
      });
      if (!category.empty()) ++counts[category];
    }
  }

  std::vector<std::pair<std::string, std::uint64_t>> out;
  for (const std::string& tag : dict.tag_defs) {
    auto it = counts.find(tag);
    if (it != counts.end()) out.emplace_back(tag, it->second);
  }
  return out;
}

}  // namespace mfst
