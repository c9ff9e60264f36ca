#include "rlisp/lexer.hpp"

#include <cctype>

namespace rr::rlisp {

namespace {

bool id_start(int c) { return std::isalpha(c) || c == '!'; }
bool id_char(int c) { return std::isalnum(c) || c == '!' || c == '_'; }

}  // namespace

std::vector<Token> lex(std::string_view src, int first_line) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = first_line;
  auto at = [&](std::size_t k) -> int { return k < src.size() ? static_cast<unsigned char>(src[k]) : -1; };
  auto push = [&](Tok kind, std::string text, std::size_t b, int ln, bool esc = false) {
    out.push_back(Token{kind, std::move(text), esc, ln, b, i});
  };

  while (i < src.size()) {
    int c = at(i);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t b = i;
    int ln = line;
    if (id_start(c)) {
      std::string text;
      bool esc = false;
      while (i < src.size() && id_char(at(i))) {
        if (src[i] == '!') {
          if (i + 1 >= src.size()) break;
          esc = true;
          if (src[i + 1] == '\n') ++line;
          text += src[i + 1];
          i += 2;
          continue;
        }
        text += static_cast<char>(std::toupper(at(i)));
        ++i;
      }
      if (text.empty()) {
        push(Tok::Bad, "stray ! at end of input", b, ln);
        continue;
      }
      if (!esc && text == "COMMENT") {
        while (i < src.size() && src[i] != ';' && src[i] != '$') {
          if (src[i] == '\n') ++line;
          ++i;
        }
        if (i < src.size()) ++i;
        continue;
      }
      push(Tok::Id, std::move(text), b, ln, esc);
      continue;
    }
    if (std::isdigit(c)) {
      std::string text;
      while (std::isdigit(at(i))) text += src[i++];
      if (at(i) == '.' && std::isdigit(at(i + 1))) {
        while (at(i) == '.' || std::isdigit(at(i))) ++i;
        push(Tok::Bad, "floating point numbers are not supported", b, ln);
        continue;
      }
      push(Tok::Num, std::move(text), b, ln);
      continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < src.size()) {
        if (src[i] == '"') {
          if (at(i + 1) == '"') {
            text += '"';
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        if (src[i] == '\n') ++line;
        text += src[i++];
      }
      if (!closed)
        push(Tok::Bad, kUnterminated, b, ln);
      else
        push(Tok::Str, std::move(text), b, ln);
      continue;
    }
    auto two = [&](const char* op) { return at(i) == op[0] && at(i + 1) == op[1]; };
    if (two(":=") || two("**") || two("<=") || two(">=")) {
      std::string op = std::string(src.substr(i, 2));
      i += 2;
      push(Tok::Op, op, b, ln);
      continue;
    }
    switch (c) {
      case '^':
        ++i;
        push(Tok::Op, "**", b, ln);
        continue;
      case '+':
      case '-':
      case '*':
      case '/':
      case '(':
      case ')':
      case ',':
      case ';':
      case '$':
      case ':':
      case '=':
      case '<':
      case '>':
        ++i;
        push(Tok::Op, std::string(1, static_cast<char>(c)), b, ln);
        continue;
      case '.':
        ++i;
        push(Tok::Bad, "unsupported package: the HEP dot product (.) is not available", b, ln);
        continue;
      default:
        ++i;
        push(Tok::Bad, std::string("illegal character '") + static_cast<char>(c) + "'", b, ln);
        continue;
    }
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.begin = end.end = src.size();
  out.push_back(end);
  return out;
}

}  // namespace rr::rlisp
