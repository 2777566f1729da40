// Copyright 2026 The Storyboard Compiler Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "storyboard/scenario.h"

#include <cctype>

namespace storyboard {
namespace {

struct Word {
  std::string text;
  bool quoted = false;
  int column = 1;
};

class LineError {
 public:
  LineError(std::string message, int column) : message(std::move(message)), column(column) {}
  std::string message;
  int column;
};

std::vector<Word> split(std::string_view line) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Word w;
    w.column = static_cast<int>(i) + 1;
    if (c == '"') {
      w.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          closed = true;
          ++i;
          break;
        }
        if (line[i] == '\\') {
          if (i + 1 < line.size() && (line[i + 1] == '"' || line[i + 1] == '\\')) {
            w.text.push_back(line[i + 1]);
            i += 2;
            continue;
          }
          throw LineError("unsupported escape sequence in string", static_cast<int>(i) + 1);
        }
        w.text.push_back(line[i++]);
      }
      if (!closed) throw LineError("unterminated string literal", w.column);
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '"' &&
             line[i] != '#') {
        w.text.push_back(line[i++]);
      }
    }
    words.push_back(std::move(w));
  }
  return words;
}

// Reads `key="value"` from words[i], words[i + 1].
std::pair<std::string, std::string> key_value(const std::vector<Word>& words, std::size_t i) {
  const Word& key = words[i];
  if (key.quoted || key.text.size() < 2 || key.text.back() != '=') {
    throw LineError("expected name=\"value\"", key.column);
  }
  if (i + 1 >= words.size() || !words[i + 1].quoted) throw LineError("expected a quoted value", key.column);
  return {key.text.substr(0, key.text.size() - 1), words[i + 1].text};
}

}  // namespace

ScenarioOutcome parse_scenario(std::string_view text, std::string_view file) {
  Scenario sc;
  std::vector<Diagnostic> errors;
  bool launched = false;
  bool stopped = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;
    try {
      const std::vector<Word> words = split(line);
      if (words.empty()) continue;
      const Word& head = words.front();
      const std::string& cmd = head.text;
      if (head.quoted) throw LineError("expected a command", head.column);
      if (cmd == "launch") {
        if (launched) throw LineError("launch given twice", head.column);
        launched = true;
        if (words.size() > 1) {
          if (words[1].text != "uri" || words[1].quoted || words.size() < 3 || !words[2].quoted) {
            throw LineError("expected launch uri \"...\"", words[1].column);
          }
          Scenario::ViaUri via;
          via.uri = words[2].text;
          for (std::size_t i = 3; i < words.size(); i += 2) {
            auto [k, v] = key_value(words, i);
            if (!via.args.emplace(k, v).second) throw LineError("argument " + k + " given twice", words[i].column);
          }
          sc.via_uri = std::move(via);
        }
      } else if (auto gesture = gesture_from(cmd)) {
        if (words.size() != 2 || words[1].quoted) throw LineError("expected " + cmd + " <widget>", head.column);
        if (stopped) throw LineError("gesture after stop", head.column);
        sc.gestures.push_back(UserAction{words[1].text, *gesture});
      } else if (cmd == "op") {
        if (words.size() != 4 || words[1].quoted || words[2].text != "->") {
          throw LineError("expected op <name> -> \"text\"|true|false", head.column);
        }
        const Word& r = words[3];
        OpResult result;
        if (r.quoted) {
          result = r.text;
        } else if (r.text == "true" || r.text == "false") {
          result = r.text == "true";
        } else {
          throw LineError("expected a quoted string, true or false", r.column);
        }
        sc.op_results[words[1].text].push_back(std::move(result));
      } else if (cmd == "env") {
        if (words.size() != 3) throw LineError("expected env name=\"value\"", head.column);
        auto [k, v] = key_value(words, 1);
        sc.uri_env[k] = v;
      } else if (cmd == "stop") {
        if (words.size() != 1) throw LineError("stop takes no arguments", words[1].column);
        if (stopped) throw LineError("stop given twice", head.column);
        stopped = true;
        sc.stop_after = static_cast<int>(sc.gestures.size());
      } else {
        throw LineError("unknown command '" + cmd + "'", head.column);
      }
    } catch (const LineError& e) {
      errors.push_back(make_error("SC001", e.message, SourceSpan{std::string(file), line_no, e.column, 0}));
    }
    if (end == text.size()) break;
  }
  ScenarioOutcome out;
  if (errors.empty()) {
    out.scenario = std::move(sc);
  } else {
    out.errors = std::move(errors);
  }
  return out;
}

}  // namespace storyboard
