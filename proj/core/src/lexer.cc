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

#include "storyboard/lexer.h"

#include <cctype>

namespace storyboard {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  LexResult run() {
    LexResult out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) break;
      const std::size_t start = pos_;
      const int line = line_, col = col_;
      const char c = text_[pos_];
      Token tok;
      if (ident_start(c)) {
        while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
        tok.kind = TokenKind::kIdent;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        tok.kind = TokenKind::kInt;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '"') {
        if (!lex_string(tok, out)) continue;
      } else if (std::string_view("{}()[],.=").find(c) != std::string_view::npos) {
        advance();
        tok.kind = TokenKind::kPunct;
        tok.text = std::string(1, c);
      } else {
        advance();
        out.errors.push_back(make_error("SY001", std::string("unexpected character '") + c + "'",
                                        SourceSpan{std::string(file_), line, col, 1}));
        continue;
      }
      tok.span = SourceSpan{std::string(file_), line, col, static_cast<int>(pos_ - start)};
      out.tokens.push_back(std::move(tok));
    }
    out.tokens.push_back(Token{TokenKind::kEnd, "", SourceSpan{std::string(file_), line_, col_, 0}});
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // Returns false when the string was malformed (error recorded, token dropped).
  bool lex_string(Token& tok, LexResult& out) {
    const std::size_t start = pos_;
    const int line = line_, col = col_;
    advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        out.errors.push_back(make_error("SY001", "unterminated string literal",
                                        SourceSpan{std::string(file_), line, col,
                                                   static_cast<int>(pos_ - start)}));
        return false;
      }
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        const int esc_line = line_, esc_col = col_;
        advance();
        if (pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\\')) {
          value.push_back(text_[pos_]);
          advance();
          continue;
        }
        out.errors.push_back(make_error("SY001", "unsupported escape sequence in string",
                                        SourceSpan{std::string(file_), esc_line, esc_col, 2}));
        continue;
      }
      value.push_back(c);
      advance();
    }
    tok.kind = TokenKind::kString;
    tok.text = std::move(value);
    return true;
  }

  std::string_view text_;
  std::string_view file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

LexResult lex(std::string_view text, std::string_view file) { return Lexer(text, file).run(); }

}  // namespace storyboard
