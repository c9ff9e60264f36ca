#include <cctype>

#include "lisp/interp.hpp"

namespace rr::lisp {

Reader::Reader(Interp& in, std::string_view text, int first_line) : in_(in), src_(text), line_(first_line) {}

namespace {

bool delimiter(int c) {
  return c < 0 || std::isspace(c) || c == '(' || c == ')' || c == '[' || c == ']' || c == '\'' || c == '"' || c == '%';
}

}  // namespace

Reader::Tok Reader::scan(std::string& text, bool& escaped) {
  text.clear();
  escaped = false;
  for (;;) {
    int c = peek();
    if (c < 0) return Tok::End;
    if (c == '\n') {
      ++line_;
      ++pos_;
    } else if (std::isspace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (peek() >= 0 && peek() != '\n') ++pos_;
    } else {
      break;
    }
  }
  int c = peek();
  ++pos_;
  switch (c) {
    case '(':
      return Tok::Open;
    case ')':
      return Tok::Close;
    case '[':
      return Tok::OpenV;
    case ']':
      return Tok::CloseV;
    case '\'':
      return Tok::Quote;
    case '"':
      for (;;) {
        int d = peek();
        if (d < 0) throw IncompleteInput("end of input inside a string");
        ++pos_;
        if (d == '\n') ++line_;
        if (d == '"') {
          if (peek() == '"') {
            text += '"';
            ++pos_;
            continue;
          }
          return Tok::Str;
        }
        text += static_cast<char>(d);
      }
    default:
      break;
  }
  --pos_;
  while (!delimiter(peek())) {
    int d = peek();
    ++pos_;
    if (d == '!') {
      if (peek() < 0) throw IncompleteInput("end of input after escape character");
      text += static_cast<char>(peek());
      ++pos_;
      escaped = true;
      continue;
    }
    text += static_cast<char>(std::toupper(d));
  }
  if (text == "." && !escaped) return Tok::Dot;
  return Tok::Atom;
}

Value Reader::atom_from(const std::string& text, bool escaped) {
  if (!escaped && looks_like_integer(text)) return parse_integer(in_, text);
  return in_.sym(text);
}

Value Reader::read_datum(Tok t, std::string& text, bool escaped) {
  switch (t) {
    case Tok::End:
      throw IncompleteInput("end of input inside an expression");
    case Tok::Atom:
      return atom_from(text, escaped);
    case Tok::Str:
      return make_string(text);
    case Tok::Quote: {
      Tok n = scan(text, escaped);
      if (n == Tok::Close || n == Tok::CloseV || n == Tok::Dot)
        throw LispError("read error at line " + std::to_string(line_) + ": nothing after quote");
      Value d = read_datum(n, text, escaped);
      return list(Value::symbol(in_.names().quote), std::move(d));
    }
    case Tok::Close:
      throw LispError("read error at line " + std::to_string(line_) + ": unbalanced ')'");
    case Tok::CloseV:
      throw LispError("read error at line " + std::to_string(line_) + ": unbalanced ']'");
    case Tok::Dot:
      throw LispError("read error at line " + std::to_string(line_) + ": misplaced '.'");
    case Tok::OpenV: {
      std::vector<Value> items;
      for (;;) {
        Tok n = scan(text, escaped);
        if (n == Tok::End) throw IncompleteInput("end of input inside a vector");
        if (n == Tok::CloseV) break;
        if (n == Tok::Dot || n == Tok::Close)
          throw LispError("read error at line " + std::to_string(line_) + ": bad token in vector");
        items.push_back(read_datum(n, text, escaped));
      }
      return make_vector(std::move(items));
    }
    case Tok::Open: {
      std::vector<Value> items;
      Value tail;
      for (;;) {
        Tok n = scan(text, escaped);
        if (n == Tok::End) throw IncompleteInput("end of input inside a list");
        if (n == Tok::Close) break;
        if (n == Tok::CloseV) throw LispError("read error at line " + std::to_string(line_) + ": unbalanced ']'");
        if (n == Tok::Dot) {
          if (items.empty()) throw LispError("read error at line " + std::to_string(line_) + ": misplaced '.'");
          Tok m = scan(text, escaped);
          if (m == Tok::Close || m == Tok::CloseV) throw LispError("read error at line " + std::to_string(line_) + ": nothing after '.'");
          tail = read_datum(m, text, escaped);
          Tok close = scan(text, escaped);
          if (close == Tok::End) throw IncompleteInput("end of input inside a dotted pair");
          if (close != Tok::Close)
            throw LispError("read error at line " + std::to_string(line_) + ": expected ')' after dotted tail");
          break;
        }
        items.push_back(read_datum(n, text, escaped));
      }
      return list_from(items, std::move(tail));
    }
  }
  return Value();
}

bool Reader::next(Value& out) {
  std::string text;
  bool escaped = false;
  Tok t = scan(text, escaped);
  if (t == Tok::End) return false;
  out = read_datum(t, text, escaped);
  return true;
}

Value read_one(Interp& in, std::string_view text) {
  Reader r(in, text);
  Value v;
  if (!r.next(v)) throw IncompleteInput("no datum in input");
  Value extra;
  if (r.next(extra)) throw LispError("read error: more than one datum in input");
  return v;
}

}  // namespace rr::lisp
