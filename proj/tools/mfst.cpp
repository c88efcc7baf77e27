// mfst.cpp
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
//
// Command line driver: compile dictionaries, run analysis/generation over
// streams, expand dictionaries, evaluate against a gold corpus, and report
// per-category entry counts.

#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "mfst/dix_parser.hpp"
#include "mfst/eval.hpp"
#include "mfst/expander.hpp"
#include "mfst/stream.hpp"
#include "mfst/transducer.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

int usage() {
  std::cerr << "usage: mfst <command> [args]\n"
               "  comp lr|rl <dix> <bin>  compile a dictionary into a binary transducer\n"
               "  proc [-g] <bin>         analyze stdin to stdout (generate with -g)\n"
               "  expand <dix>            print every surface:lexical pair\n"
               "  eval --corpus <txt> --gold <tsv> --fst <bin> [--stopwords <txt>]\n"
               "                          score an analyzer against a gold standard\n"
               "  stats <dix>             per-category entry counts\n";
  return kExitUsage;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path);
  return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

mfst::MonodixDictionary parse_valid_dictionary(const std::string& path) {
  mfst::MonodixDictionary dict = mfst::parse_dix(read_file(path));
  mfst::ValidationReport report = mfst::validate(dict);
  if (!report.ok()) throw std::runtime_error(path + ":\n" + report.to_string());
  return dict;
}

mfst::LetterTransducer load_transducer(const std::string& path) {
  std::string data = read_file(path);
  return mfst::load(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

int cmd_comp(const std::vector<std::string>& args) {
  if (args.size() != 3) return usage();
  mfst::CompileDirection dir;
  if (args[0] == "lr")
    dir = mfst::CompileDirection::LeftToRight;
  else if (args[0] == "rl")
    dir = mfst::CompileDirection::RightToLeft;
  else
    return usage();

  mfst::MonodixDictionary dict = parse_valid_dictionary(args[1]);
  mfst::LetterTransducer t = mfst::minimize(mfst::compile(dict, dir));
  write_file(args[2], mfst::save(t));

  std::size_t entries = 0;
  for (const mfst::Section& s : dict.sections) entries += s.entries.size();
  std::cout << dict.sections.size() << "@" << entries << " states:" << t.states.size()
            << " transitions:" << t.transition_count() << "\n";
  return 0;
}

int cmd_proc(const std::vector<std::string>& args) {
  bool generate = false;
  std::string path;
  for (const std::string& arg : args) {
    if (arg == "-g")
      generate = true;
    else if (!arg.empty() && arg[0] == '-')
      return usage();
    else if (path.empty())
      path = arg;
    else
      return usage();
  }
  if (path.empty()) return usage();

  mfst::LetterTransducer t = load_transducer(path);
  if (generate)
    mfst::generate_stream(std::cin, std::cout, t);
  else
    mfst::analyze_stream(std::cin, std::cout, t);
  std::cout.flush();
  return 0;
}

int cmd_expand(const std::vector<std::string>& args) {
  if (args.size() != 1) return usage();
  mfst::MonodixDictionary dict = parse_valid_dictionary(args[0]);
  std::string buf;
  mfst::expand(dict, [&](const mfst::MorphPair& pair) {
    buf += mfst::render_pair(pair);
    buf.push_back('\n');
    if (buf.size() >= 1 << 16) {
      std::cout << buf;
      buf.clear();
    }
    return true;
  });
  std::cout << buf;
  return 0;
}

int cmd_eval(const std::vector<std::string>& args) {
  std::string corpus_path, gold_path, fst_path, stopwords_path;
  for (std::size_t i = 0; i < args.size(); i += 2) {
    if (i + 1 >= args.size()) return usage();
    const std::string& flag = args[i];
    const std::string& value = args[i + 1];
    if (flag == "--corpus")
      corpus_path = value;
    else if (flag == "--gold")
      gold_path = value;
    else if (flag == "--fst")
      fst_path = value;
    else if (flag == "--stopwords")
      stopwords_path = value;
    else
      return usage();
  }
  if (corpus_path.empty() || gold_path.empty() || fst_path.empty()) return usage();

  mfst::LetterTransducer analyzer = load_transducer(fst_path);
  if (analyzer.direction != mfst::CompileDirection::LeftToRight)
    throw std::runtime_error(fst_path + ": evaluation requires an analyzer (compiled lr)");

  mfst::CleaningConfig config;
  if (!stopwords_path.empty()) config.stopwords = mfst::parse_stopwords(read_file(stopwords_path));

  mfst::Alphabet alphabet = mfst::Alphabet::from_transducer(analyzer);
  std::vector<std::string> tokens =
      mfst::word_texts(mfst::clean_corpus(read_file(corpus_path), config, alphabet));
  std::vector<mfst::GoldRecord> gold = mfst::parse_gold_tsv(read_file(gold_path));

  std::cout << mfst::evaluate(tokens, gold, analyzer).to_table();
  return 0;
}

int cmd_stats(const std::vector<std::string>& args) {
  if (args.size() != 1) return usage();
  mfst::MonodixDictionary dict = parse_valid_dictionary(args[0]);
  std::string line;
  for (const auto& [tag, count] : mfst::dict_stats(dict)) {
    if (!line.empty()) line += " / ";
    line += tag + " " + std::to_string(count);
  }
  if (!line.empty()) std::cout << line << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  if (argc < 2) return usage();
  std::string cmd = argv[1];
  std::vector<std::string> args(argv + 2, argv + argc);
  try {
    if (cmd == "comp") return cmd_comp(args);
    if (cmd == "proc") return cmd_proc(args);
    if (cmd == "expand") return cmd_expand(args);
    if (cmd == "eval") return cmd_eval(args);
    if (cmd == "stats") return cmd_stats(args);
    return usage();
  } catch (const IoError& e) {
    std::cerr << "mfst: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "mfst: " << e.what() << "\n";
    return kExitData;
  }
}
