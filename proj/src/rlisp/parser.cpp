#include "rlisp/parser.hpp"

#include <unordered_set>

namespace rr::rlisp {

using lisp::car;
using lisp::cdr;
using lisp::list;
using lisp::list_from;

namespace {

// Words that shape expressions; they can never be operands.
const std::unordered_set<std::string>& reserved() {
  static const std::unordered_set<std::string> words = {"BEGIN", "END", "IF",      "THEN", "ELSE", "FOR", "STEP",
                                                        "UNTIL", "DO",  "SUM",     "PRODUCT", "AND", "OR",  "NOT",
                                                        "NEQ"};
  return words;
}

// Words that only mean something at the head of a statement.
const std::unordered_set<std::string>& statement_words() {
  static const std::unordered_set<std::string> words = {
      "WRITE",  "RETURN", "GO",       "GOTO",   "PROCEDURE", "ARRAY",  "OPERATOR", "MATRIX",
      "LET",    "CLEAR",  "ON",       "OFF",    "FACTOR",    "REMFAC", "ORDER",    "SHOWTIME",
      "SCALAR", "INTEGER", "REAL",    "ALGEBRAIC", "SYMBOLIC", "MASS",  "MSHELL",   "VECTOR", "INDEX"};
  return words;
}

// A string still open at the end of the text may be closed by more input.
ParseError bad_token(const Token& t) { return ParseError(t.text, t.line, t.text == kUnterminated); }

}  // namespace

bool is_reserved_word(const std::string& w) { return reserved().count(w) != 0 || statement_words().count(w) != 0; }

Parser::Parser(lisp::Interp& in, std::string_view src, int first_line)
    : in_(in), src_(src), toks_(lex(src, first_line)) {}

const Token& Parser::peek(std::size_t k) const {
  std::size_t i = pos_ + k;
  if (i >= toks_.size()) i = toks_.size() - 1;
  if (k == 0 && toks_[i].kind == Tok::Bad) throw bad_token(toks_[i]);
  return toks_[i];
}

const Token& Parser::advance() {
  const Token& t = peek();
  if (t.kind != Tok::End) ++pos_;
  return t;
}

bool Parser::is_op(const char* op, std::size_t k) const {
  std::size_t i = std::min(pos_ + k, toks_.size() - 1);
  return toks_[i].kind == Tok::Op && toks_[i].text == op;
}

bool Parser::is_kw(const char* kw, std::size_t k) const {
  std::size_t i = std::min(pos_ + k, toks_.size() - 1);
  return toks_[i].kind == Tok::Id && !toks_[i].escaped && toks_[i].text == kw;
}

bool Parser::is_keyword(const Token& t) const {
  return t.kind == Tok::Id && !t.escaped && reserved().count(t.text) != 0;
}

void Parser::fail(const std::string& msg) const {
  const Token& t = toks_[std::min(pos_, toks_.size() - 1)];
  if (t.kind == Tok::Bad) throw bad_token(t);
  if (t.kind == Tok::End) throw ParseError("unexpected end of input", t.line, true);
  throw ParseError(msg, t.line);
}

void Parser::expect_op(const char* op) {
  if (!is_op(op)) {
    const Token& t = peek();
    fail(std::string("expected ") + op + " but found " + (t.text.empty() ? "end of input" : t.text));
  }
  advance();
}

void Parser::expect_kw(const char* kw) {
  if (!is_kw(kw)) {
    const Token& t = peek();
    fail(std::string("expected ") + kw + " but found " + (t.text.empty() ? "end of input" : t.text));
  }
  advance();
}

lisp::Symbol* Parser::ident() {
  const Token& t = peek();
  if (t.kind != Tok::Id || is_keyword(t)) fail("identifier expected but found " + t.text);
  advance();
  return in_.intern(t.text);
}

void Parser::recover() {
  int depth = 0;
  std::size_t i = stmt_start_;
  for (; i < toks_.size() && toks_[i].kind != Tok::End; ++i) {
    const Token& t = toks_[i];
    if (t.kind == Tok::Id && !t.escaped) {
      if (t.text == "BEGIN") ++depth;
      if (t.text == "END" && depth > 0) --depth;
    }
    if (i >= pos_ && depth == 0 && t.kind == Tok::Op && (t.text == ";" || t.text == "$")) {
      ++i;
      break;
    }
  }
  pos_ = std::min(i, toks_.size() - 1);
}

bool Parser::next(Statement& out) {
  while (toks_[pos_].kind == Tok::Op && (toks_[pos_].text == ";" || toks_[pos_].text == "$")) ++pos_;
  stmt_start_ = pos_;
  if (toks_[pos_].kind == Tok::End) return false;
  out.begin = toks_[pos_].begin;
  out.line = toks_[pos_].line;
  out.tree = statement(false);
  if (car(out.tree).symbol_ptr() == in_.intern("*END*")) {
    out.echo = false;
    out.end = toks_[pos_ > 0 ? pos_ - 1 : 0].end;
    if (at_terminator()) out.end = advance().end;
    return true;
  }
  if (!at_terminator()) {
    const Token& t = peek();
    fail("unexpected " + t.text + " (missing ; or $?)");
  }
  const Token& term = advance();
  out.echo = term.text == ";";
  out.end = term.end;
  return true;
}

Value Parser::expression_only() {
  stmt_start_ = pos_;
  Value e = expr();
  if (peek().kind != Tok::End) fail("unexpected " + peek().text);
  return e;
}

// ---- statements ------------------------------------------------------------

Value Parser::statement(bool in_block) {
  const Token& t = peek();
  if (t.kind == Tok::Id && !t.escaped) {
    const std::string& w = t.text;
    if (in_block && is_op(":", 1) && !is_keyword(t)) {
      Value label = in_.sym(w);
      advance();
      advance();
      return list(sym("*LABEL*"), label);
    }
    if (w == "BEGIN") return block();
    if (w == "IF") return if_statement();
    if (w == "FOR") return is_kw("ALL", 1) ? for_all() : for_form(true);
    if (w == "WRITE") return write_statement();
    if (w == "RETURN") {
      advance();
      if (at_terminator() || is_kw("END") || is_kw("ELSE") || peek().kind == Tok::End) return list(sym("*RETURN*"));
      return list(sym("*RETURN*"), expr());
    }
    if (w == "GO" || w == "GOTO") {
      advance();
      if (w == "GO" && is_kw("TO")) advance();
      return list(sym("*GO*"), Value::symbol(ident()));
    }
    if (w == "PROCEDURE") return procedure("ALGEBRAIC");
    if ((w == "ALGEBRAIC" || w == "INTEGER" || w == "SYMBOLIC" || w == "REAL") && is_kw("PROCEDURE", 1)) {
      std::string type = w;
      advance();
      return procedure(type.c_str());
    }
    if (w == "SCALAR" || w == "INTEGER" || w == "REAL") return id_list("*SCALAR*");
    if (w == "ARRAY") return declaration_list("*ARRAY*");
    if (w == "MATRIX") return declaration_list("*MATRIX*");
    if (w == "OPERATOR") return id_list("*OPERATOR*");
    if (w == "ON") return id_list("*ON*");
    if (w == "OFF") return id_list("*OFF*");
    if (w == "FACTOR") return expr_list("*FACTOR*");
    if (w == "REMFAC") return expr_list("*REMFAC*");
    if (w == "ORDER") return expr_list("*ORDER*");
    if (w == "LET") {
      advance();
      return let_items("*LET*", Value());
    }
    if (w == "CLEAR") {
      advance();
      return let_items("*CLEAR*", Value());
    }
    if (w == "SHOWTIME") {
      advance();
      return list(sym("*SHOWTIME*"));
    }
    if (w == "END") {
      advance();
      return list(sym("*END*"));
    }
    if (w == "MASS" || w == "MSHELL" || w == "VECTOR" || w == "INDEX") return unsupported();
  }
  return expr();
}

Value Parser::block() {
  expect_kw("BEGIN");
  std::vector<Value> vars;
  std::vector<Value> body{sym("*BLOCK*"), Value()};
  for (;;) {
    while (at_terminator()) advance();
    if (is_kw("END")) {
      advance();
      break;
    }
    if ((is_kw("SCALAR") || is_kw("INTEGER") || is_kw("REAL")) && !is_kw("PROCEDURE", 1)) {
      advance();
      for (;;) {
        vars.push_back(Value::symbol(ident()));
        if (!is_op(",")) break;
        advance();
      }
      continue;
    }
    Value s = statement(true);
    body.push_back(s);
    if (car(s).symbol_ptr() == in_.intern("*LABEL*")) continue;
    if (at_terminator()) {
      advance();
      continue;
    }
    if (is_kw("END")) {
      advance();
      break;
    }
    fail("expected ; or END in block but found " + peek().text);
  }
  body[1] = list_from(vars);
  return list_from(body);
}

Value Parser::if_statement() {
  expect_kw("IF");
  Value c = expr();
  expect_kw("THEN");
  Value a = statement(false);
  if (is_kw("ELSE")) {
    advance();
    return list(sym("*IF*"), c, a, statement(false));
  }
  return list(sym("*IF*"), c, a);
}

Value Parser::for_form(bool statement_position) {
  expect_kw("FOR");
  Value v = Value::symbol(ident());
  expect_op(":=");
  Value a = disjunction();
  Value s;
  Value b;
  if (is_kw("STEP")) {
    advance();
    s = disjunction();
    expect_kw("UNTIL");
    b = disjunction();
  } else {
    expect_op(":");
    b = disjunction();
  }
  Value ctl = list(a, s, b);
  if (is_kw("DO")) {
    if (!statement_position) fail("FOR ... DO has no value");
    advance();
    return list(sym("*FORDO*"), v, ctl, statement(false));
  }
  if (is_kw("SUM") || is_kw("PRODUCT")) {
    Value action = in_.sym(advance().text);
    return list(sym("FOR"), v, ctl, action, expr());
  }
  fail("expected DO, SUM or PRODUCT but found " + peek().text);
}

Value Parser::for_all() {
  expect_kw("FOR");
  expect_kw("ALL");
  std::vector<Value> vars;
  for (;;) {
    vars.push_back(Value::symbol(ident()));
    if (!is_op(",")) break;
    advance();
  }
  if (is_kw("LET")) {
    advance();
    return let_items("*LET*", list_from(vars));
  }
  if (is_kw("CLEAR")) {
    advance();
    return let_items("*CLEAR*", list_from(vars));
  }
  fail("expected LET or CLEAR after FOR ALL");
}

Value Parser::let_items(const char* head, Value vars) {
  bool is_let = std::string(head) == "*LET*";
  std::vector<Value> items{sym(head), vars};
  for (;;) {
    Value e = expr();
    if (is_let) {
      if (!e.is_pair() || car(e).symbol_ptr() != in_.intern("EQUAL")) fail("LET needs equations of the form lhs = rhs");
      items.push_back(list(car(cdr(e)), car(cdr(cdr(e)))));
    } else {
      items.push_back(e);
    }
    if (!is_op(",")) break;
    advance();
  }
  return list_from(items);
}

Value Parser::write_statement() {
  expect_kw("WRITE");
  std::vector<Value> items{sym("*WRITE*")};
  if (at_terminator() || peek().kind == Tok::End || is_kw("END") || is_kw("ELSE")) return list_from(items);
  for (;;) {
    items.push_back(expr());
    if (!is_op(",")) break;
    advance();
  }
  return list_from(items);
}

Value Parser::procedure(const char* type) {
  expect_kw("PROCEDURE");
  Value name = Value::symbol(ident());
  std::vector<Value> params;
  if (is_op("(")) {
    advance();
    if (!is_op(")"))
      for (;;) {
        params.push_back(Value::symbol(ident()));
        if (!is_op(",")) break;
        advance();
      }
    expect_op(")");
  } else if (peek().kind == Tok::Id && !is_keyword(peek())) {
    params.push_back(Value::symbol(ident()));
  }
  if (!at_terminator()) fail("expected ; after procedure heading");
  advance();
  Value body = statement(false);
  return list(sym("*PROCEDURE*"), name, in_.sym(type), list_from(params), body);
}

Value Parser::declaration_list(const char* head) {
  advance();
  std::vector<Value> items{sym(head)};
  for (;;) {
    lisp::Symbol* s = ident();
    if (is_op("(")) {
      advance();
      std::vector<Value> call{Value::symbol(s)};
      for (;;) {
        call.push_back(expr());
        if (!is_op(",")) break;
        advance();
      }
      expect_op(")");
      items.push_back(list_from(call));
    } else {
      items.push_back(Value::symbol(s));
    }
    if (!is_op(",")) break;
    advance();
  }
  return list_from(items);
}

Value Parser::id_list(const char* head) {
  advance();
  std::vector<Value> items{sym(head)};
  if (at_terminator()) return list_from(items);
  for (;;) {
    items.push_back(Value::symbol(ident()));
    if (!is_op(",")) break;
    advance();
  }
  return list_from(items);
}

Value Parser::expr_list(const char* head) {
  advance();
  std::vector<Value> items{sym(head)};
  for (;;) {
    items.push_back(expr());
    if (!is_op(",")) break;
    advance();
  }
  return list_from(items);
}

Value Parser::unsupported() {
  std::string name = advance().text;
  while (pos_ < toks_.size() - 1) {
    const Token& t = toks_[pos_];
    if (t.kind == Tok::Op && (t.text == ";" || t.text == "$")) break;
    ++pos_;
  }
  return list(sym("*UNSUPPORTED*"), in_.sym(name));
}

// ---- expressions -----------------------------------------------------------

Value Parser::expr() {
  Value lhs = disjunction();
  if (is_op(":=")) {
    advance();
    return list(sym("SETQ"), lhs, expr());
  }
  return lhs;
}

Value Parser::disjunction() {
  Value a = conjunction();
  if (!is_kw("OR")) return a;
  std::vector<Value> items{sym("OR"), a};
  while (is_kw("OR")) {
    advance();
    items.push_back(conjunction());
  }
  return list_from(items);
}

Value Parser::conjunction() {
  Value a = negation();
  if (!is_kw("AND")) return a;
  std::vector<Value> items{sym("AND"), a};
  while (is_kw("AND")) {
    advance();
    items.push_back(negation());
  }
  return list_from(items);
}

Value Parser::negation() {
  if (is_kw("NOT")) {
    advance();
    return list(sym("NOT"), negation());
  }
  return relation();
}

Value Parser::relation() {
  Value a = sum();
  const char* rel = nullptr;
  if (is_op("="))
    rel = "EQUAL";
  else if (is_kw("NEQ"))
    rel = "NEQ";
  else if (is_op("<"))
    rel = "LESSP";
  else if (is_op(">"))
    rel = "GREATERP";
  else if (is_op("<="))
    rel = "LEQ";
  else if (is_op(">="))
    rel = "GEQ";
  if (rel == nullptr) return a;
  advance();
  return list(sym(rel), a, sum());
}

Value Parser::sum() {
  bool lead_minus = false;
  if (is_op("-")) {
    advance();
    lead_minus = true;
  } else if (is_op("+")) {
    advance();
  }
  Value t = product();
  if (lead_minus) t = list(sym("MINUS"), t);
  std::vector<Value> terms{sym("PLUS"), t};
  int ops = 0;
  bool last_minus = false;
  Value last;
  while (is_op("+") || is_op("-")) {
    last_minus = is_op("-");
    advance();
    last = product();
    ++ops;
    terms.push_back(last_minus ? list(sym("MINUS"), last) : last);
  }
  if (ops == 0) return t;
  if (ops == 1 && last_minus) return list(sym("DIFFERENCE"), t, last);
  return list_from(terms);
}

Value Parser::product() {
  std::vector<Value> factors{power()};
  auto close = [&]() -> Value {
    if (factors.size() == 1) return factors[0];
    factors.insert(factors.begin(), sym("TIMES"));
    return list_from(factors);
  };
  for (;;) {
    if (is_op("*")) {
      advance();
      factors.push_back(power());
    } else if (is_op("/")) {
      advance();
      Value n = close();
      Value d = power();
      factors = {list(sym("QUOTIENT"), n, d)};
    } else {
      return close();
    }
  }
}

Value Parser::power() {
  if (is_op("-")) {
    advance();
    return list(sym("MINUS"), power());
  }
  if (is_op("+")) advance();
  Value base = primary();
  if (is_op("**")) {
    advance();
    return list(sym("EXPT"), base, power());
  }
  return base;
}

bool Parser::starts_operand(const Token& t) const {
  if (t.kind == Tok::Num) return true;
  return t.kind == Tok::Id && !is_keyword(t);
}

Value Parser::primary() {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::Num:
      advance();
      return lisp::parse_integer(in_, t.text);
    case Tok::Str:
      advance();
      return lisp::make_string(t.text);
    case Tok::Op:
      if (t.text == "(") {
        advance();
        Value e = expr();
        if (is_op(",")) {
          std::vector<Value> items{sym("*ROW*"), e};
          while (is_op(",")) {
            advance();
            items.push_back(expr());
          }
          e = list_from(items);
        }
        expect_op(")");
        return e;
      }
      fail("unexpected " + t.text);
    case Tok::Id: {
      if (!t.escaped) {
        if (t.text == "IF") {
          advance();
          Value c = expr();
          expect_kw("THEN");
          Value a = expr();
          Value b = Value::fixnum(0);
          if (is_kw("ELSE")) {
            advance();
            b = expr();
          }
          return list(sym("IF"), c, a, b);
        }
        if (t.text == "FOR") return for_form(false);
        if (is_keyword(t)) fail("unexpected " + t.text);
      }
      Value s = in_.sym(t.text);
      advance();
      if (is_op("(")) {
        advance();
        std::vector<Value> call{s};
        if (!is_op(")"))
          for (;;) {
            call.push_back(expr());
            if (!is_op(",")) break;
            advance();
          }
        expect_op(")");
        if (s.symbol_ptr() == in_.intern("MAT")) {
          Value row = sym("*ROW*");
          for (std::size_t i = 1; i < call.size(); ++i)
            if (!(call[i].is_pair() && car(call[i]).eq(row))) call[i] = list(row, call[i]);
        }
        return list_from(call);
      }
      if (starts_operand(peek())) return list(s, power());
      return s;
    }
    case Tok::End:
      fail("unexpected end of input");
    default:
      fail("unexpected " + t.text);
  }
}

}  // namespace rr::rlisp
