#include <algorithm>

#include "lisp/interp.hpp"

namespace rr::lisp {

namespace {

using Args = std::span<const Value>;

Value& pair_ref(Interp& in, const Value& v, const char* who) {
  if (!v.is_pair()) throw LispError(std::string(who) + " of a non-pair: " + in.prin1_string(v));
  return const_cast<Value&>(v);
}

std::int64_t fixnum_arg(Interp& in, const Value& v, const char* who) {
  if (!v.is_fixnum()) throw LispError(std::string(who) + " expects a small integer, got " + in.prin1_string(v));
  return v.fixnum_value();
}

bool eqn(const Value& a, const Value& b) {
  if (a.is_bignum() && b.is_bignum()) return equal(a, b);
  return a.eq(b);
}

}  // namespace

void Interp::install_kernel() {
  // Special forms.
  defspecial("QUOTE", [](Interp&, const Value& a) { return car(a); });
  defspecial("FUNCTION", [](Interp&, const Value& a) { return car(a); });
  defspecial("LAMBDA", [](Interp& in, const Value& a) { return cons(Value::symbol(in.names().lambda), a); });
  defspecial("COND", [](Interp& in, const Value& a) {
    for (Value c = a; c.is_pair(); c = cdr(c)) {
      const Value& clause = car(c);
      Value test = in.eval(car(clause));
      if (!test.is_nil()) {
        if (!cdr(clause).is_pair()) return test;
        return in.progn(cdr(clause));
      }
    }
    return Value();
  });
  defspecial("PROGN", [](Interp& in, const Value& a) { return in.progn(a); });
  defspecial("AND", [](Interp& in, const Value& a) {
    Value r = in.t();
    for (Value c = a; c.is_pair(); c = cdr(c)) {
      r = in.eval(car(c));
      if (r.is_nil()) return r;
    }
    return r;
  });
  defspecial("OR", [](Interp& in, const Value& a) {
    for (Value c = a; c.is_pair(); c = cdr(c)) {
      Value r = in.eval(car(c));
      if (!r.is_nil()) return r;
    }
    return Value();
  });
  defspecial("SETQ", [](Interp& in, const Value& a) {
    Value result;
    for (Value c = a; c.is_pair(); c = cdr(cdr(c))) {
      Symbol& s = in.symbol_of(car(c));
      if (s.constant) throw LispError("cannot assign to constant " + s.name);
      result = in.eval(car(cdr(c)));
      s.value = result;
      s.bound = true;
    }
    return result;
  });
  defspecial("PROG", [](Interp& in, const Value& a) { return in.prog(a); });
  defspecial("GO", [](Interp& in, const Value& a) -> Value {
    Symbol* label = &in.symbol_of(car(a));
    for (auto it = in.prog_labels_.rbegin(); it != in.prog_labels_.rend(); ++it)
      if (std::find((*it)->begin(), (*it)->end(), label) != (*it)->end()) throw GoSignal{label};
    throw LispError("GO to missing label " + label->name);
  });
  defspecial("RETURN", [](Interp& in, const Value& a) -> Value {
    if (in.prog_labels_.empty()) throw LispError("RETURN outside PROG");
    throw ReturnSignal{in.eval(car(a))};
  });
  defspecial("DE", [](Interp& in, const Value& a) {
    Symbol& name = in.symbol_of(car(a));
    in.define_expr(&name, car(cdr(a)), cdr(cdr(a)));
    return car(a);
  });
  defspecial("WHILE", [](Interp& in, const Value& a) {
    while (!in.eval(car(a)).is_nil()) in.progn(cdr(a));
    return Value();
  });

  // Structure.
  defbuiltin("CAR", [](Interp& in, Args a) { return pair_ref(in, a[0], "CAR").as<Pair>().car; }, 1, 1);
  defbuiltin("CDR", [](Interp& in, Args a) { return pair_ref(in, a[0], "CDR").as<Pair>().cdr; }, 1, 1);
  defbuiltin("CONS", [](Interp&, Args a) { return cons(a[0], a[1]); }, 2, 2);
  defbuiltin("LIST", [](Interp&, Args a) { return list_from(std::vector<Value>(a.begin(), a.end())); }, 0, -1);
  defbuiltin("RPLACA", [](Interp& in, Args a) {
    pair_ref(in, a[0], "RPLACA").as<Pair>().car = a[1];
    return a[0];
  }, 2, 2);
  defbuiltin("RPLACD", [](Interp& in, Args a) {
    pair_ref(in, a[0], "RPLACD").as<Pair>().cdr = a[1];
    return a[0];
  }, 2, 2);
  defbuiltin("ATOM", [](Interp& in, Args a) { return in.truth(a[0].is_atom()); }, 1, 1);
  defbuiltin("PAIRP", [](Interp& in, Args a) { return in.truth(a[0].is_pair()); }, 1, 1);
  defbuiltin("NULL", [](Interp& in, Args a) { return in.truth(a[0].is_nil()); }, 1, 1);
  defbuiltin("NOT", [](Interp& in, Args a) { return in.truth(a[0].is_nil()); }, 1, 1);
  defbuiltin("SYMBOLP", [](Interp& in, Args a) { return in.truth(a[0].is_symbol()); }, 1, 1);
  defbuiltin("IDP", [](Interp& in, Args a) { return in.truth(a[0].is_symbol()); }, 1, 1);
  defbuiltin("NUMBERP", [](Interp& in, Args a) { return in.truth(a[0].is_integer()); }, 1, 1);
  defbuiltin("FIXP", [](Interp& in, Args a) { return in.truth(a[0].is_integer()); }, 1, 1);
  defbuiltin("STRINGP", [](Interp& in, Args a) { return in.truth(a[0].is_string()); }, 1, 1);
  defbuiltin("VECTORP", [](Interp& in, Args a) { return in.truth(a[0].is_vector()); }, 1, 1);
  defbuiltin("EQ", [](Interp& in, Args a) { return in.truth(a[0].eq(a[1])); }, 2, 2);
  defbuiltin("EQN", [](Interp& in, Args a) { return in.truth(eqn(a[0], a[1])); }, 2, 2);
  defbuiltin("EQUAL", [](Interp& in, Args a) { return in.truth(equal(a[0], a[1])); }, 2, 2);

  // Symbols and property lists.
  defbuiltin("SET", [](Interp& in, Args a) {
    Symbol& s = in.symbol_of(a[0]);
    if (s.constant) throw LispError("cannot assign to constant " + s.name);
    s.value = a[1];
    s.bound = true;
    return a[1];
  }, 2, 2);
  defbuiltin("BOUNDP", [](Interp& in, Args a) { return in.truth(a[0].is_nil() || in.symbol_of(a[0]).bound); }, 1, 1);
  defbuiltin("PUT", [](Interp& in, Args a) {
    in.put(a[0], a[1], a[2]);
    return a[2];
  }, 3, 3);
  defbuiltin("GET", [](Interp& in, Args a) { return in.get(a[0], a[1]); }, 2, 2);
  defbuiltin("REMPROP", [](Interp& in, Args a) {
    Value old = in.get(a[0], a[1]);
    in.remprop(a[0], a[1]);
    return old;
  }, 2, 2);
  defbuiltin("FLAG", [](Interp& in, Args a) {
    for (Value p = a[0]; p.is_pair(); p = cdr(p)) in.put(car(p), a[1], in.t());
    return Value();
  }, 2, 2);
  defbuiltin("REMFLAG", [](Interp& in, Args a) {
    for (Value p = a[0]; p.is_pair(); p = cdr(p)) in.remprop(car(p), a[1]);
    return Value();
  }, 2, 2);
  defbuiltin("FLAGP", [](Interp& in, Args a) { return in.truth(in.flagp(a[0], a[1])); }, 2, 2);
  defbuiltin("INTERN", [](Interp& in, Args a) {
    if (!a[0].is_string()) return a[0];
    return in.sym(a[0].as<String>().text);
  }, 1, 1);
  defbuiltin("GENSYM", [](Interp& in, Args) {
    // Interned but spelled so the reader cannot produce it unescaped.
    return in.sym("G#" + std::to_string(in.next_gensym()));
  }, 0, 0);
  defbuiltin("GETD", [](Interp& in, Args a) -> Value {
    if (!a[0].is_symbol()) return Value();
    const FunctionCell& f = in.symbol_of(a[0]).fn;
    switch (f.type) {
      case FunctionCell::Type::Expr:
        return cons(in.sym("EXPR"), f.lambda);
      case FunctionCell::Type::Builtin:
        return cons(in.sym("EXPR"), a[0]);
      case FunctionCell::Type::Special:
        return cons(in.sym("FEXPR"), a[0]);
      case FunctionCell::Type::None:
        break;
    }
    return Value();
  }, 1, 1);
  defbuiltin("EXPLODE", [](Interp& in, Args a) { return in.explode(a[0]); }, 1, 1);
  defbuiltin("COMPRESS", [](Interp& in, Args a) { return in.compress(a[0]); }, 1, 1);
  defbuiltin("LITER", [](Interp& in, Args a) { return in.truth(in.liter(a[0])); }, 1, 1);
  defbuiltin("DIGIT", [](Interp& in, Args a) {
    if (a[0].kind() != Kind::Symbol) return Value();
    const std::string& n = a[0].symbol_ptr()->name;
    return in.truth(n.size() == 1 && n[0] >= '0' && n[0] <= '9');
  }, 1, 1);

  // Arithmetic.
  defbuiltin("PLUS2", [](Interp& in, Args a) { return in.plus2(a[0], a[1]); }, 2, 2);
  defbuiltin("DIFFERENCE", [](Interp& in, Args a) { return in.difference(a[0], a[1]); }, 2, 2);
  defbuiltin("TIMES2", [](Interp& in, Args a) { return in.times2(a[0], a[1]); }, 2, 2);
  defbuiltin("QUOTIENT", [](Interp& in, Args a) { return in.quotient(a[0], a[1]); }, 2, 2);
  defbuiltin("REMAINDER", [](Interp& in, Args a) { return in.remainder(a[0], a[1]); }, 2, 2);
  defbuiltin("MINUS", [](Interp& in, Args a) { return in.minus(a[0]); }, 1, 1);
  defbuiltin("LESSP", [](Interp& in, Args a) { return in.truth(in.lessp(a[0], a[1])); }, 2, 2);
  defbuiltin("GREATERP", [](Interp& in, Args a) { return in.truth(in.greaterp(a[0], a[1])); }, 2, 2);
  defbuiltin("PLUS", [](Interp& in, Args a) {
    Value r = Value::fixnum(0);
    for (const auto& x : a) r = in.plus2(r, x);
    return r;
  }, 0, -1);
  defbuiltin("TIMES", [](Interp& in, Args a) {
    Value r = Value::fixnum(1);
    for (const auto& x : a) r = in.times2(r, x);
    return r;
  }, 0, -1);
  defbuiltin("ZEROP", [](Interp& in, Args a) { return in.truth(a[0].is_fixnum() && a[0].fixnum_value() == 0); }, 1, 1);
  defbuiltin("ONEP", [](Interp& in, Args a) { return in.truth(a[0].is_fixnum() && a[0].fixnum_value() == 1); }, 1, 1);
  defbuiltin("MINUSP", [](Interp& in, Args a) { return in.truth(a[0].is_integer() && in.sign(a[0]) < 0); }, 1, 1);

  // Representation of large integers; arithmetic on them lives in the prelude.
  defbuiltin("BIGNUMP", [](Interp& in, Args a) { return in.truth(a[0].is_bignum()); }, 1, 1);
  defbuiltin("BIG-SIGN", [](Interp& in, Args a) {
    if (!a[0].is_bignum()) throw LispError("BIG-SIGN of a non-bignum: " + in.prin1_string(a[0]));
    return Value::fixnum(a[0].as<Bignum>().sign);
  }, 1, 1);
  defbuiltin("BIG-DIGITS", [](Interp& in, Args a) {
    if (!a[0].is_bignum()) throw LispError("BIG-DIGITS of a non-bignum: " + in.prin1_string(a[0]));
    return a[0].as<Bignum>().digits;
  }, 1, 1);
  defbuiltin("MAKE-INTEGER", [](Interp& in, Args a) {
    return in.make_integer(static_cast<int>(fixnum_arg(in, a[0], "MAKE-INTEGER")), a[1]);
  }, 2, 2);
  defbuiltin("BIG-RADIX", [](Interp&, Args) { return Value::fixnum(kBigRadix); }, 0, 0);

  // Vectors.
  defbuiltin("MKVECT", [](Interp& in, Args a) {
    std::int64_t n = fixnum_arg(in, a[0], "MKVECT");
    if (n < -1) throw LispError("MKVECT size out of range");
    return make_vector(std::vector<Value>(static_cast<std::size_t>(n + 1)));
  }, 1, 1);
  defbuiltin("UPBV", [](Interp& in, Args a) {
    if (!a[0].is_vector()) throw LispError("UPBV of a non-vector: " + in.prin1_string(a[0]));
    return Value::fixnum(static_cast<std::int64_t>(a[0].as<Vector>().items.size()) - 1);
  }, 1, 1);
  defbuiltin("GETV", [](Interp& in, Args a) {
    if (!a[0].is_vector()) throw LispError("GETV of a non-vector: " + in.prin1_string(a[0]));
    auto& items = a[0].as<Vector>().items;
    std::int64_t i = fixnum_arg(in, a[1], "GETV");
    if (i < 0 || i >= static_cast<std::int64_t>(items.size())) throw LispError("GETV index out of range");
    return items[static_cast<std::size_t>(i)];
  }, 2, 2);
  defbuiltin("PUTV", [](Interp& in, Args a) {
    if (!a[0].is_vector()) throw LispError("PUTV of a non-vector: " + in.prin1_string(a[0]));
    auto& items = a[0].as<Vector>().items;
    std::int64_t i = fixnum_arg(in, a[1], "PUTV");
    if (i < 0 || i >= static_cast<std::int64_t>(items.size())) throw LispError("PUTV index out of range");
    items[static_cast<std::size_t>(i)] = a[2];
    return a[2];
  }, 3, 3);

  // Evaluation and errors.
  defbuiltin("EVAL", [](Interp& in, Args a) { return in.eval(a[0]); }, 1, 1);
  defbuiltin("APPLY", [](Interp& in, Args a) {
    std::vector<Value> args = list_to_vector(a[1]);
    return in.apply(a[0], args);
  }, 2, 2);
  defbuiltin("ERROR", [](Interp& in, Args a) -> Value {
    std::string msg;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) msg += ' ';
      msg += in.princ_string(a[i]);
    }
    throw LispError(msg);
  }, 0, -1);
  defbuiltin("ERRORSET", [](Interp& in, Args a) {
    Outcome o = in.errorset(a[0]);
    if (o.ok) return list(Value::symbol(in.names().ok), o.value);
    return list(Value::symbol(in.names().err), make_string(o.message));
  }, 1, 1);

  // Output.
  defbuiltin("PRIN1", [](Interp& in, Args a) {
    in.write(in.prin1_string(a[0]));
    return a[0];
  }, 1, 1);
  defbuiltin("PRINC", [](Interp& in, Args a) {
    in.write(in.princ_string(a[0]));
    return a[0];
  }, 1, 1);
  defbuiltin("PRINT", [](Interp& in, Args a) {
    in.write(in.prin1_string(a[0]));
    in.write("\n");
    return a[0];
  }, 1, 1);
  defbuiltin("TERPRI", [](Interp& in, Args) {
    in.write("\n");
    return Value();
  }, 0, 0);
  defbuiltin("POSN", [](Interp& in, Args) { return Value::fixnum(in.column()); }, 0, 0);
  defbuiltin("FLATSIZE", [](Interp& in, Args a) {
    return Value::fixnum(static_cast<std::int64_t>(in.prin1_string(a[0]).size()));
  }, 1, 1);
}

}  // namespace rr::lisp
