#include "rlisp/translate.hpp"

#include <vector>

namespace rr::rlisp {

using lisp::car;
using lisp::cdr;
using lisp::list;
using lisp::list_from;
using lisp::Value;

namespace {

class Translator {
 public:
  Translator(lisp::Interp& in, bool symbolic) : in_(in), symbolic_(symbolic) {}

  Value stmt(const Value& s) {
    lisp::Symbol* h = s.is_pair() ? car(s).symbol_ptr() : nullptr;
    std::string n = h != nullptr ? h->name : "";
    const Value& args = cdr(s);
    if (n == "*BLOCK*") return block(args);
    if (n == "*IF*") {
      Value clauses = list(list(test(car(args)), stmt(car(cdr(args)))));
      if (cdr(cdr(args)).is_pair()) clauses = list(car(clauses), list(in_.t(), stmt(car(cdr(cdr(args))))));
      return lisp::cons(sym("COND"), clauses);
    }
    if (n == "*FORDO*") {
      const Value& ctl = car(cdr(args));
      Value body = stmt(car(cdr(cdr(args))));
      if (symbolic_) return symbolic_for(car(args), ctl, body);
      return list(sym("ALG-FOR-DO"), car(args), car(ctl), car(cdr(ctl)), car(cdr(cdr(ctl))), body);
    }
    if (n == "*WRITE*") {
      if (!symbolic_) return lisp::cons(sym("ALG-WRITE"), args);
      std::vector<Value> forms{sym("PROGN")};
      for (Value p = args; p.is_pair(); p = cdr(p)) forms.push_back(list(sym("PRINC"), expr(car(p))));
      forms.push_back(list(sym("TERPRI")));
      return list_from(forms);
    }
    if (n == "*RETURN*") return list(sym("RETURN"), args.is_pair() ? expr(car(args)) : Value());
    if (n == "*GO*") return list(sym("GO"), car(args));
    if (n == "*PROCEDURE*") {
      bool sym_mode = car(cdr(args)).symbol_ptr() == in_.intern("SYMBOLIC");
      Value body = Translator(in_, sym_mode).stmt(car(cdr(cdr(cdr(args)))));
      return list(sym("ALG-PROCEDURE"), car(args), car(cdr(args)), car(cdr(cdr(args))), body);
    }
    if (n == "*END*") return Value();
    if (!n.empty() && n.size() > 2 && n.front() == '*' && n.back() == '*' && n != "*ROW*")
      return list(sym("ALG-EXEC"), quote(s));
    return expr(s);
  }

 private:
  Value sym(const char* name) { return in_.sym(name); }
  Value quote(const Value& v) { return list(sym("QUOTE"), v); }

  Value test(const Value& c) { return symbolic_ ? expr(c) : list(sym("ALG-BOOL"), quote(c)); }

  Value expr(const Value& e) {
    if (!symbolic_) return list(sym("AEVAL"), quote(e));
    return lisp_expr(e);
  }

  Value block(const Value& args) {
    std::vector<Value> forms{sym("PROG"), car(args)};
    // Algebraic scalars start out as zero.
    if (!symbolic_)
      for (Value p = car(args); p.is_pair(); p = cdr(p)) forms.push_back(list(sym("SETQ"), car(p), Value::fixnum(0)));
    for (Value p = cdr(args); p.is_pair(); p = cdr(p)) {
      const Value& st = car(p);
      if (st.is_pair() && car(st).symbol_ptr() == in_.intern("*LABEL*"))
        forms.push_back(car(cdr(st)));
      else
        forms.push_back(stmt(st));
    }
    return list_from(forms);
  }

  // Symbolic mode: RLISP operators map onto the kernel's functions.
  Value lisp_expr(const Value& e) {
    if (!e.is_pair()) return e.is_symbol() && !e.is_nil() && !e.eq(in_.t()) ? e : quote_if_needed(e);
    lisp::Symbol* h = car(e).symbol_ptr();
    std::string n = h != nullptr ? h->name : "";
    const Value& args = cdr(e);
    std::vector<Value> xs;
    for (Value p = args; p.is_pair(); p = cdr(p)) xs.push_back(lisp_expr(car(p)));
    auto fold = [&](const char* fn) {
      Value acc = xs.front();
      for (std::size_t i = 1; i < xs.size(); ++i) acc = list(sym(fn), acc, xs[i]);
      return acc;
    };
    if (n == "SETQ") return list(sym("SETQ"), car(args), xs[1]);
    if (n == "PLUS") return fold("PLUS2");
    if (n == "TIMES") return fold("TIMES2");
    if (n == "NEQ") return list(sym("NOT"), list(sym("EQUAL"), xs[0], xs[1]));
    if (n == "IF") return list(sym("COND"), list(xs[0], xs[1]), list(in_.t(), xs[2]));
    if (n == "FOR") alg_for_unsupported();
    if (n == "*ROW*") return lisp::cons(sym("LIST"), list_from(xs));
    return lisp::cons(car(e), list_from(xs));
  }

  Value quote_if_needed(const Value& v) { return v.is_string() || v.is_integer() || v.is_nil() || v.eq(in_.t()) ? v : quote(v); }

  [[noreturn]] void alg_for_unsupported() { throw lisp::LispError("FOR ... SUM is not available in symbolic procedures"); }

  Value symbolic_for(const Value& var, const Value& ctl, const Value& body) {
    // (PROG (v) (SETQ v a) L (COND ((GREATERP v b) (RETURN NIL))) body (SETQ v (PLUS2 v s)) (GO L))
    Value label = sym("FOR-LOOP");
    Value step = car(cdr(ctl)).is_nil() ? Value::fixnum(1) : lisp_expr(car(cdr(ctl)));
    return list(sym("PROG"), list(var), list(sym("SETQ"), var, lisp_expr(car(ctl))), label,
                list(sym("COND"), list(list(sym("GREATERP"), var, lisp_expr(car(cdr(cdr(ctl))))), list(sym("RETURN"), Value()))),
                body, list(sym("SETQ"), var, list(sym("PLUS2"), var, step)), list(sym("GO"), label));
  }

  lisp::Interp& in_;
  bool symbolic_;
};

}  // namespace

Value translate(lisp::Interp& in, const Value& stmt, bool symbolic) { return Translator(in, symbolic).stmt(stmt); }

}  // namespace rr::rlisp
