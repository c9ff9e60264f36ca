#include "rlisp/unparse.hpp"

#include <cctype>

#include "rlisp/parser.hpp"

namespace rr::rlisp {

using lisp::car;
using lisp::cdr;
using lisp::Value;
using out::Printer;

namespace {

lisp::Symbol* head_of(const Value& u) { return u.is_pair() ? car(u).symbol_ptr() : nullptr; }

bool head_is(const Value& u, const char* name) {
  lisp::Symbol* h = head_of(u);
  return h != nullptr && h->name == name;
}

const char* relation_text(const std::string& h) {
  if (h == "EQUAL") return " = ";
  if (h == "NEQ") return " NEQ ";
  if (h == "LESSP") return " < ";
  if (h == "GREATERP") return " > ";
  if (h == "LEQ") return " <= ";
  if (h == "GEQ") return " >= ";
  return nullptr;
}

}  // namespace

Unparser::Unparser(alg::Algebra& a) : alg_(a), pr_(a) {
  pr_.exact = true;
  pr_.other = [this](const Value& u, std::string& out) { return special(u, out); };
  pr_.other_prec = [this](const Value& u) { return special_prec(u); };
}

std::string Unparser::name(const lisp::Symbol* s) {
  const std::string& n = s->name;
  std::string r;
  for (std::size_t i = 0; i < n.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(n[i]);
    bool ok = std::isupper(c) || (i > 0 && std::isdigit(c));
    if (!ok) r += '!';
    r += static_cast<char>(c);
  }
  if (is_reserved_word(n) || n == "COMMENT") r.insert(r.begin(), '!');
  return r;
}

int Unparser::special_prec(const Value& u) {
  lisp::Symbol* h = head_of(u);
  if (h == nullptr) return -1;
  const std::string& n = h->name;
  if (n == "SETQ" || n == "OR" || n == "AND" || n == "NOT" || n == "IF" || n == "FOR" || relation_text(n) != nullptr)
    return 0;
  return -1;
}

std::string Unparser::items(const Value& list, Printer::Ctx ctx) {
  std::string s;
  bool first = true;
  for (Value p = list; p.is_pair(); p = cdr(p)) {
    if (!first) s += ", ";
    pr_.emit(car(p), ctx, s);
    first = false;
  }
  return s;
}

bool Unparser::special(const Value& u, std::string& out) {
  if (u.is_symbol()) {
    out += name(u.symbol_ptr());
    return true;
  }
  if (u.is_string()) {
    out += '"';
    for (char c : u.as<lisp::String>().text) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return true;
  }
  lisp::Symbol* h = head_of(u);
  if (h == nullptr) return false;
  const std::string& n = h->name;
  const Value& args = cdr(u);
  if (n == "SETQ") {
    pr_.emit(car(args), Printer::Term, out);
    out += " := ";
    pr_.emit(car(cdr(args)), Printer::Any, out);
    return true;
  }
  if (const char* rel = relation_text(n)) {
    pr_.emit(car(args), Printer::Term, out);
    out += rel;
    pr_.emit(car(cdr(args)), Printer::Term, out);
    return true;
  }
  if (n == "OR" || n == "AND") {
    bool first = true;
    for (Value p = args; p.is_pair(); p = cdr(p)) {
      if (!first) out += n == "OR" ? " OR " : " AND ";
      pr_.emit(car(p), Printer::Term, out);
      first = false;
    }
    return true;
  }
  if (n == "NOT") {
    out += "NOT ";
    pr_.emit(car(args), Printer::Term, out);
    return true;
  }
  if (n == "IF") {
    out += "IF ";
    pr_.emit(car(args), Printer::Any, out);
    out += " THEN ";
    pr_.emit(car(cdr(args)), Printer::Any, out);
    out += " ELSE ";
    pr_.emit(car(cdr(cdr(args))), Printer::Any, out);
    return true;
  }
  if (n == "FOR") {
    const Value& ctl = car(cdr(args));
    out += "FOR ";
    out += name(car(args).symbol_ptr());
    out += " := ";
    pr_.emit(car(ctl), Printer::Term, out);
    if (car(cdr(ctl)).is_nil()) {
      out += " : ";
    } else {
      out += " STEP ";
      pr_.emit(car(cdr(ctl)), Printer::Term, out);
      out += " UNTIL ";
    }
    pr_.emit(car(cdr(cdr(ctl))), Printer::Term, out);
    out += ' ';
    out += car(cdr(cdr(args))).symbol_ptr()->name;
    out += ' ';
    pr_.emit(car(cdr(cdr(cdr(args)))), Printer::Any, out);
    return true;
  }
  if (n == "*ROW*") {
    out += '(' + items(args, Printer::Any) + ')';
    return true;
  }
  return false;
}

std::string Unparser::expression(const Value& e) { return Printer::plain(pr_.prefix(e)); }

std::string Unparser::statement(const Value& s) {
  lisp::Symbol* h = head_of(s);
  if (h == nullptr || h->name.size() < 2 || h->name.front() != '*' || h->name.back() != '*' || h->name == "*ROW*") {
    std::string e = expression(s);
    // An IF at the start of a statement would read as the statement form.
    if (head_is(s, "IF")) return '(' + e + ')';
    return e;
  }
  const std::string& n = h->name;
  const Value& args = cdr(s);
  auto ids = [&](const Value& l) {
    std::string r;
    for (Value p = l; p.is_pair(); p = cdr(p)) r += (r.empty() ? "" : ", ") + name(car(p).symbol_ptr());
    return r;
  };
  auto word = [&](const char* kw, const Value& l) {
    std::string r = kw;
    std::string rest = items(l, Printer::Any);
    return rest.empty() ? r : r + " " + rest;
  };
  if (n == "*BLOCK*") {
    std::string r = "BEGIN";
    if (car(args).is_pair()) r += " SCALAR " + ids(car(args)) + ";";
    bool first = true;
    bool after_label = false;
    for (Value p = cdr(args); p.is_pair(); p = cdr(p)) {
      const Value& st = car(p);
      if (!first && !after_label) r += ";";
      r += ' ';
      if (head_is(st, "*LABEL*")) {
        r += name(car(cdr(st)).symbol_ptr()) + ":";
        after_label = true;
      } else {
        r += statement(st);
        after_label = false;
      }
      first = false;
    }
    return r + " END";
  }
  if (n == "*IF*") {
    std::string r = "IF " + expression(car(args)) + " THEN " + statement(car(cdr(args)));
    if (cdr(cdr(args)).is_pair()) r += " ELSE " + statement(car(cdr(cdr(args))));
    return r;
  }
  if (n == "*FORDO*") {
    const Value& ctl = car(cdr(args));
    std::string r = "FOR " + name(car(args).symbol_ptr()) + " := ";
    pr_.emit(car(ctl), Printer::Term, r);
    if (car(cdr(ctl)).is_nil()) {
      r += " : ";
    } else {
      r += " STEP ";
      pr_.emit(car(cdr(ctl)), Printer::Term, r);
      r += " UNTIL ";
    }
    pr_.emit(car(cdr(cdr(ctl))), Printer::Term, r);
    return Printer::plain(r) + " DO " + statement(car(cdr(cdr(args))));
  }
  if (n == "*WRITE*") return Printer::plain(word("WRITE", args));
  if (n == "*RETURN*") return args.is_pair() ? "RETURN " + expression(car(args)) : "RETURN";
  if (n == "*GO*") return "GO TO " + name(car(args).symbol_ptr());
  if (n == "*PROCEDURE*") {
    std::string r = car(cdr(args)).symbol_ptr()->name + " PROCEDURE " + name(car(args).symbol_ptr());
    r += "(" + ids(car(cdr(cdr(args)))) + "); ";
    return r + statement(car(cdr(cdr(cdr(args)))));
  }
  if (n == "*ARRAY*") return Printer::plain(word("ARRAY", args));
  if (n == "*MATRIX*") return Printer::plain(word("MATRIX", args));
  if (n == "*OPERATOR*") return "OPERATOR " + ids(args);
  if (n == "*SCALAR*") return "SCALAR " + ids(args);
  if (n == "*ON*") return "ON " + ids(args);
  if (n == "*OFF*") return "OFF " + ids(args);
  if (n == "*FACTOR*") return Printer::plain(word("FACTOR", args));
  if (n == "*REMFAC*") return Printer::plain(word("REMFAC", args));
  if (n == "*ORDER*") return Printer::plain(word("ORDER", args));
  if (n == "*LET*" || n == "*CLEAR*") {
    std::string r;
    if (car(args).is_pair()) r = "FOR ALL " + ids(car(args)) + " ";
    r += n == "*LET*" ? "LET " : "CLEAR ";
    bool first = true;
    for (Value p = cdr(args); p.is_pair(); p = cdr(p)) {
      if (!first) r += ", ";
      if (n == "*LET*") {
        pr_.emit(car(car(p)), Printer::Term, r);
        r += " = ";
        pr_.emit(car(cdr(car(p))), Printer::Term, r);
      } else {
        pr_.emit(car(p), Printer::Any, r);
      }
      first = false;
    }
    return Printer::plain(r);
  }
  if (n == "*SHOWTIME*") return "SHOWTIME";
  if (n == "*END*") return "END";
  if (n == "*UNSUPPORTED*") return car(args).symbol_ptr()->name;
  return expression(s);
}

}  // namespace rr::rlisp
