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

#ifndef STORYBOARD_LEXER_H_
#define STORYBOARD_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "storyboard/diagnostic.h"

namespace storyboard {

enum class TokenKind { kIdent, kString, kInt, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // identifier, decoded string contents, digits, or the punctuation char
  SourceSpan span;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_word(std::string_view t) const { return is(TokenKind::kIdent, t); }
  bool is_punct(char c) const { return kind == TokenKind::kPunct && text.size() == 1 && text[0] == c; }
};

struct LexResult {
  std::vector<Token> tokens;  // always terminated by a kEnd token
  std::vector<Diagnostic> errors;
};

// Tokenizes storyboard text. Identifiers are [A-Za-z_][A-Za-z0-9_-]*;
// keywords are contextual and come back as identifiers. `#` starts a comment.
// Strings are double-quoted with `\"` and `\\` as the only escapes.
LexResult lex(std::string_view text, std::string_view file);

}  // namespace storyboard

#endif  // STORYBOARD_LEXER_H_
