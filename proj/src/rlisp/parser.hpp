#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lisp/interp.hpp"
#include "rlisp/lexer.hpp"

namespace rr::rlisp {

using lisp::Value;

// Words with a syntactic role somewhere; written with ! they are plain names.
bool is_reserved_word(const std::string& w);

class ParseError : public lisp::LispError {
 public:
  ParseError(const std::string& msg, int line, bool incomplete = false)
      : lisp::LispError(msg), line(line), incomplete(incomplete) {}
  int line;
  bool incomplete;  // input ended inside the statement
};

// One parsed top-level statement. The tree uses algebraic prefix forms for
// expressions and *STARRED* heads for statements (see translate.hpp).
struct Statement {
  Value tree;
  bool echo = true;  // terminated by ";" rather than "$"
  int line = 1;
  std::size_t begin = 0;  // source span including the terminator
  std::size_t end = 0;
};

class Parser {
 public:
  Parser(lisp::Interp& in, std::string_view src, int first_line = 1);

  // False at end of input. A top-level END yields an (*END*) statement.
  // On ParseError the position is left at the failing token; call recover().
  bool next(Statement& out);
  // Skips past the next statement terminator.
  void recover();
  // Parses a single expression occupying the whole text.
  Value expression_only();

  std::string_view source() const { return src_; }
  // Offset just past the last token consumed.
  std::size_t consumed() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].end; }

 private:
  const Token& peek(std::size_t k = 0) const;
  const Token& advance();
  bool is_op(const char* op, std::size_t k = 0) const;
  bool is_kw(const char* kw, std::size_t k = 0) const;
  bool is_keyword(const Token& t) const;
  bool at_terminator() const { return is_op(";") || is_op("$"); }
  void expect_op(const char* op);
  void expect_kw(const char* kw);
  [[noreturn]] void fail(const std::string& msg) const;
  lisp::Symbol* ident();
  Value sym(const char* name) { return in_.sym(name); }

  Value statement(bool in_block);
  Value block();
  Value if_statement();
  Value for_form(bool statement_position);
  Value for_all();
  Value write_statement();
  Value procedure(const char* type);
  Value declaration_list(const char* head);
  Value expr_list(const char* head);
  Value id_list(const char* head);
  Value let_items(const char* head, Value vars);
  Value unsupported();

  Value expr();
  Value disjunction();
  Value conjunction();
  Value negation();
  Value relation();
  Value sum();
  Value product();
  Value power();
  Value primary();
  bool starts_operand(const Token& t) const;

  lisp::Interp& in_;
  std::string src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t stmt_start_ = 0;
};

}  // namespace rr::rlisp
