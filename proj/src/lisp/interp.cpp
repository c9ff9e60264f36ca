#include "lisp/interp.hpp"

#include <algorithm>

namespace rr::lisp {

class EvalDepth {
 public:
  explicit EvalDepth(Interp& in) : in_(in) {
    if (++in_.depth_ > in_.cfg_.max_depth) {
      --in_.depth_;
      throw LispError("evaluation depth limit exceeded");
    }
  }
  ~EvalDepth() { --in_.depth_; }
  EvalDepth(const EvalDepth&) = delete;
  EvalDepth& operator=(const EvalDepth&) = delete;

 private:
  Interp& in_;
};

namespace {

class ProgScope {
 public:
  ProgScope(std::vector<const std::vector<Symbol*>*>& stack, const std::vector<Symbol*>* labels)
      : stack_(stack) {
    stack_.push_back(labels);
  }
  ~ProgScope() { stack_.pop_back(); }
  ProgScope(const ProgScope&) = delete;
  ProgScope& operator=(const ProgScope&) = delete;

 private:
  std::vector<const std::vector<Symbol*>*>& stack_;
};

}  // namespace

BindGuard::~BindGuard() {
  for (auto it = saved_.rbegin(); it != saved_.rend(); ++it) {
    it->sym->value = std::move(it->value);
    it->sym->bound = it->bound;
    --it->sym->local_depth;
  }
}

void BindGuard::bind(Symbol* s, Value v) {
  if (s->constant) throw LispError("cannot bind constant " + s->name);
  saved_.push_back({s, std::move(s->value), s->bound});
  s->value = std::move(v);
  s->bound = true;
  ++s->local_depth;
}

Interp::Activation::Activation(Interp& in) noexcept : saved_(active_heap()) { active_heap() = in.heap_.get(); }
Interp::Activation::~Activation() { active_heap() = saved_; }

Interp::Interp(InterpConfig cfg) : cfg_(cfg), heap_(std::make_unique<HeapStats>()) {
  heap_->limit = cfg_.storage_limit;
  Activation act(*this);
  nil_.constant = true;
  Symbol* t = intern("T");
  t_value_ = Value::symbol(t);
  t->value = t_value_;
  t->bound = true;
  t->constant = true;
  names_.quote = intern("QUOTE");
  names_.lambda = intern("LAMBDA");
  names_.function = intern("FUNCTION");
  names_.go = intern("GO");
  names_.ret = intern("RETURN");
  names_.cond = intern("COND");
  names_.progn = intern("PROGN");
  names_.t = t;
  names_.ok = intern("OK");
  names_.err = intern("ERR");
  names_.bigadd = intern("BIGADD");
  names_.bigdifference = intern("BIGDIFFERENCE");
  names_.bigtimes = intern("BIGTIMES");
  names_.bigquotient = intern("BIGQUOTIENT");
  names_.bigremainder = intern("BIGREMAINDER");
  names_.biglessp = intern("BIGLESSP");
  out_ = [](std::string_view) {};
  err_ = [](std::string_view) {};
  install_kernel();
}

Interp::~Interp() {
  Activation act(*this);
  // Drop every cell owned through symbols before the heap record goes away.
  for (auto& [name, s] : obarray_) {
    s->value = Value();
    s->plist.clear();
    s->fn = FunctionCell{};
  }
  nil_.plist.clear();
  t_value_ = Value();
  extension_.reset();
  obarray_.clear();
}

Symbol* Interp::intern(std::string_view name) {
  if (name == "NIL") return &nil_;
  auto it = obarray_.find(std::string(name));
  if (it != obarray_.end()) return it->second.get();
  auto s = std::make_unique<Symbol>(std::string(name));
  Symbol* raw = s.get();
  obarray_.emplace(std::string(name), std::move(s));
  return raw;
}

Symbol& Interp::symbol_of(const Value& v) {
  if (v.is_nil()) return nil_;
  if (v.kind() == Kind::Symbol) return *v.symbol_ptr();
  throw LispError("not a symbol: " + prin1_string(v));
}

void Interp::write(std::string_view text) {
  out_(text);
  auto nl = text.rfind('\n');
  if (nl == std::string_view::npos)
    column_ += static_cast<int>(text.size());
  else
    column_ = static_cast<int>(text.size() - nl - 1);
}

void Interp::diagnostic(std::string_view message) {
  std::string line = "***** ";
  line += message;
  line += '\n';
  err_(line);
}

void Interp::defbuiltin(std::string_view name, BuiltinFn fn, int min_args, int max_args) {
  Symbol* s = intern(name);
  s->fn = FunctionCell{};
  s->fn.type = FunctionCell::Type::Builtin;
  s->fn.builtin = Builtin{std::move(fn), min_args, max_args};
}

void Interp::defspecial(std::string_view name, SpecialFn fn) {
  Symbol* s = intern(name);
  s->fn = FunctionCell{};
  s->fn.type = FunctionCell::Type::Special;
  s->fn.special = std::move(fn);
}

void Interp::define_expr(Symbol* name, const Value& params, const Value& body) {
  for (Value p = params; p.is_pair(); p = cdr(p))
    if (!car(p).is_symbol() || car(p).is_nil()) throw LispError("bad parameter list for " + name->name);
  name->fn = FunctionCell{};
  name->fn.type = FunctionCell::Type::Expr;
  name->fn.lambda = cons(Value::symbol(names_.lambda), cons(params, body));
}

Value Interp::eval(const Value& form) {
  switch (form.kind()) {
    case Kind::Symbol: {
      Symbol* s = form.symbol_ptr();
      if (!s->bound) throw LispError("unbound variable " + s->name);
      return s->value;
    }
    case Kind::Pair:
      return eval_pair(form);
    default:
      return form;
  }
}

Value Interp::eval_pair(const Value& form) {
  EvalDepth depth(*this);
  const Value& head = car(form);
  const Value& rest = cdr(form);
  if (head.kind() == Kind::Symbol) {
    Symbol* f = head.symbol_ptr();
    switch (f->fn.type) {
      case FunctionCell::Type::Special:
        return f->fn.special(*this, rest);
      case FunctionCell::Type::Builtin:
      case FunctionCell::Type::Expr: {
        Value small[6];
        std::vector<Value> big;
        std::size_t n = 0;
        for (const Value* p = &rest; p->is_pair(); p = &p->as<Pair>().cdr) ++n;
        std::span<Value> args;
        if (n <= 6) {
          args = std::span<Value>(small, n);
        } else {
          big.resize(n);
          args = std::span<Value>(big);
        }
        std::size_t i = 0;
        for (const Value* p = &rest; p->is_pair(); p = &p->as<Pair>().cdr) args[i++] = eval(p->as<Pair>().car);
        return apply_symbol(f, args);
      }
      case FunctionCell::Type::None:
        throw LispError("undefined function " + f->name);
    }
  }
  if (head.is_pair() && car(head).symbol_ptr() == names_.lambda) {
    std::vector<Value> args;
    for (Value p = rest; p.is_pair(); p = cdr(p)) args.push_back(eval(car(p)));
    return apply_lambda(head, args, "LAMBDA");
  }
  throw LispError("invalid function " + prin1_string(head));
}

Value Interp::apply_symbol(Symbol* f, std::span<const Value> args) {
  switch (f->fn.type) {
    case FunctionCell::Type::Builtin: {
      const Builtin& b = f->fn.builtin;
      int n = static_cast<int>(args.size());
      if (n < b.min_args || (b.max_args >= 0 && n > b.max_args))
        throw LispError(f->name + " called with " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
      return b.fn(*this, args);
    }
    case FunctionCell::Type::Expr: {
      Value lambda = f->fn.lambda;  // the definition may be replaced during the call
      return apply_lambda(lambda, args, f->name);
    }
    case FunctionCell::Type::Special:
      throw LispError("cannot apply special form " + f->name);
    case FunctionCell::Type::None:
      break;
  }
  throw LispError("undefined function " + f->name);
}

Value Interp::apply_lambda(const Value& lambda, std::span<const Value> args, std::string_view who) {
  const Value& params = car(cdr(lambda));
  BindGuard guard;
  std::size_t i = 0;
  Value p = params;
  for (; p.is_pair(); p = cdr(p), ++i) {
    if (i >= args.size()) break;
    guard.bind(&symbol_of(car(p)), args[i]);
  }
  if (p.is_pair() || i != args.size())
    throw LispError(std::string(who) + " called with " + std::to_string(args.size()) + " argument" +
                    (args.size() == 1 ? "" : "s") + ", expects " + std::to_string(list_length(params)));
  return progn(cdr(cdr(lambda)));
}

Value Interp::apply(const Value& fn, std::span<const Value> args) {
  EvalDepth depth(*this);
  if (fn.kind() == Kind::Symbol) return apply_symbol(fn.symbol_ptr(), args);
  if (fn.is_pair() && car(fn).symbol_ptr() == names_.lambda) return apply_lambda(fn, args, "LAMBDA");
  throw LispError("invalid function " + prin1_string(fn));
}

Value Interp::call(std::string_view fname, std::span<const Value> args) { return call(intern(fname), args); }

Value Interp::call(Symbol* fn, std::span<const Value> args) {
  EvalDepth depth(*this);
  return apply_symbol(fn, args);
}

Value Interp::progn(const Value& body) {
  Value result;
  for (const Value* p = &body; p->is_pair(); p = &p->as<Pair>().cdr) result = eval(p->as<Pair>().car);
  return result;
}

// PROG statements are executed here rather than through eval so that the
// common shapes (GO L), (RETURN x), (COND (p (GO L))) need no unwinding.
Interp::Flow Interp::exec(const Value& stmt, Value& result, Symbol*& label) {
  if (stmt.is_pair() && car(stmt).kind() == Kind::Symbol) {
    Symbol* head = car(stmt).symbol_ptr();
    if (head == names_.go && head->fn.type == FunctionCell::Type::Special) {
      const Value& target = car(cdr(stmt));
      label = &symbol_of(target);
      return Flow::Go;
    }
    if (head == names_.ret && head->fn.type == FunctionCell::Type::Special) {
      result = eval(car(cdr(stmt)));
      return Flow::Return;
    }
    if (head == names_.cond && head->fn.type == FunctionCell::Type::Special) {
      for (Value c = cdr(stmt); c.is_pair(); c = cdr(c)) {
        const Value& clause = car(c);
        Value test = eval(car(clause));
        if (!test.is_nil()) {
          if (!cdr(clause).is_pair()) return Flow::Normal;
          return exec_sequence(cdr(clause), result, label);
        }
      }
      return Flow::Normal;
    }
    if (head == names_.progn && head->fn.type == FunctionCell::Type::Special)
      return exec_sequence(cdr(stmt), result, label);
  }
  eval(stmt);
  return Flow::Normal;
}

Interp::Flow Interp::exec_sequence(const Value& body, Value& result, Symbol*& label) {
  for (const Value* p = &body; p->is_pair(); p = &p->as<Pair>().cdr) {
    Flow f = exec(p->as<Pair>().car, result, label);
    if (f != Flow::Normal) return f;
  }
  return Flow::Normal;
}

Value Interp::prog(const Value& args) {
  const Value& vars = car(args);
  std::vector<Value> body = list_to_vector(cdr(args));
  std::vector<Symbol*> labels;
  for (const auto& s : body)
    if (s.kind() == Kind::Symbol) labels.push_back(s.symbol_ptr());

  BindGuard guard;
  for (Value v = vars; v.is_pair(); v = cdr(v)) guard.bind(&symbol_of(car(v)), Value());
  ProgScope scope(prog_labels_, &labels);

  auto find_label = [&](Symbol* l) -> std::size_t {
    for (std::size_t i = 0; i < body.size(); ++i)
      if (body[i].kind() == Kind::Symbol && body[i].symbol_ptr() == l) return i + 1;
    return 0;
  };

  std::size_t pc = 0;
  while (pc < body.size()) {
    const Value& stmt = body[pc];
    if (stmt.kind() == Kind::Symbol) {
      ++pc;
      continue;
    }
    Value result;
    Symbol* label = nullptr;
    Flow flow;
    try {
      flow = exec(stmt, result, label);
    } catch (GoSignal& g) {
      flow = Flow::Go;
      label = g.label;
    } catch (ReturnSignal& r) {
      return std::move(r.value);
    }
    if (flow == Flow::Return) return result;
    if (flow == Flow::Go) {
      std::size_t target = find_label(label);
      if (target == 0) {
        // Owned by an enclosing PROG, if any.
        bool outer = false;
        for (std::size_t i = 0; i + 1 < prog_labels_.size(); ++i)
          if (std::find(prog_labels_[i]->begin(), prog_labels_[i]->end(), label) != prog_labels_[i]->end())
            outer = true;
        if (!outer) throw LispError("GO to missing label " + label->name);
        throw GoSignal{label};
      }
      pc = target;
      continue;
    }
    ++pc;
  }
  return Value();
}

Interp::Outcome Interp::errorset(const Value& form) {
  Outcome out;
  int depth = depth_;
  std::size_t progs = prog_labels_.size();
  try {
    out.value = eval(form);
    out.ok = true;
  } catch (const StorageExhausted& e) {
    out.storage = true;
    out.message = e.what();
  } catch (const LispError& e) {
    out.message = e.what();
  } catch (const GoSignal& g) {
    out.message = "GO to missing label " + g.label->name;
  } catch (const ReturnSignal&) {
    out.message = "RETURN outside PROG";
  }
  depth_ = depth;
  prog_labels_.resize(progs);
  return out;
}

Value Interp::get(const Value& s, const Value& key) {
  const Value* v = symbol_of(s).find_prop(&symbol_of(key));
  return v ? *v : Value();
}

void Interp::put(const Value& s, const Value& key, Value v) { symbol_of(s).put_prop(&symbol_of(key), std::move(v)); }

void Interp::remprop(const Value& s, const Value& key) { symbol_of(s).remove_prop(&symbol_of(key)); }

bool Interp::flagp(const Value& s, const Value& key) {
  if (!s.is_symbol()) return false;
  return !get(s, key).is_nil();
}

void Interp::load_source(std::string_view text, std::string_view origin) {
  Reader r(*this, text);
  Value form;
  for (;;) {
    int line = r.line();
    bool more;
    try {
      more = r.next(form);
    } catch (const LispError& e) {
      throw LispError(std::string(origin) + ":" + std::to_string(r.line()) + ": " + e.what());
    }
    if (!more) break;
    Outcome o = errorset(form);
    if (!o.ok) throw LispError(std::string(origin) + ":" + std::to_string(line) + ": " + o.message);
  }
}

}  // namespace rr::lisp
