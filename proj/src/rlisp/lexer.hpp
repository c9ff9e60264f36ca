#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rr::rlisp {

enum class Tok { Id, Num, Str, Op, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifiers folded to upper case; Bad carries the message
  bool escaped = false;  // identifier contained a ! escape, so it is never a keyword
  int line = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline constexpr const char* kUnterminated = "unterminated string";

// Splits RLISP source into tokens. COMMENT ... ; and % comments are dropped.
// Problems become Bad tokens so the parser can report them per statement.
std::vector<Token> lex(std::string_view src, int first_line = 1);

}  // namespace rr::rlisp
