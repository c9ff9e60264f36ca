// SIMP and its helpers: prefix expressions in, standard quotients out.

#include <algorithm>

#include "alg/algebra.hpp"

namespace rr::alg {

using lisp::car;
using lisp::cdr;
using lisp::cons;
using lisp::LispError;

void alg_error(const std::string& msg) { throw LispError(msg); }

class SimpDepth {
 public:
  explicit SimpDepth(Algebra& a) : a_(a) {
    if (a_.simp_depth_++ == 0) a_.firings_ = 0;
    if (a_.simp_depth_ > 5000) {
      --a_.simp_depth_;
      alg_error("expression nesting too deep");
    }
  }
  ~SimpDepth() { --a_.simp_depth_; }
  SimpDepth(const SimpDepth&) = delete;
  SimpDepth& operator=(const SimpDepth&) = delete;

 private:
  Algebra& a_;
};

Algebra::Algebra(lisp::Interp& interp) : in(interp), ring(interp) {
  auto s = [&](const char* name) { return in.intern(name); };
  n_.plus = s("PLUS");
  n_.times = s("TIMES");
  n_.minus = s("MINUS");
  n_.difference = s("DIFFERENCE");
  n_.quotient = s("QUOTIENT");
  n_.expt = s("EXPT");
  n_.df = s("DF");
  n_.sin = s("SIN");
  n_.cos = s("COS");
  n_.e = s("E");
  n_.det = s("DET");
  n_.mat = s("MAT");
  n_.setq = s("SETQ");
  n_.if_ = s("IF");
  n_.for_ = s("FOR");
  n_.sum = s("SUM");
  n_.product = s("PRODUCT");
  n_.equal = s("EQUAL");
  n_.neq = s("NEQ");
  n_.lessp = s("LESSP");
  n_.greaterp = s("GREATERP");
  n_.leq = s("LEQ");
  n_.geq = s("GEQ");
  n_.and_ = s("AND");
  n_.or_ = s("OR");
  n_.not_ = s("NOT");
  n_.proctype = s("PROCTYPE");
  n_.ans = s("*ANS");
  n_.recip = s("RECIP");
  n_.tuple = s("*ROW*");
}

// ---- kernels ---------------------------------------------------------------

Kernel* Algebra::find_kernel(const Value& prefix) const {
  auto it = kernels_.find(prefix);
  return it == kernels_.end() ? nullptr : it->second.get();
}

Kernel* Algebra::kernel(const Value& prefix) {
  auto it = kernels_.find(prefix);
  if (it != kernels_.end()) return it->second.get();
  auto k = std::make_unique<Kernel>();
  k->prefix = prefix;
  k->order = next_order_++;
  k->id = next_id_++;
  k->head = prefix.is_pair() ? car(prefix).symbol_ptr() : prefix.symbol_ptr();
  Kernel* raw = k.get();
  kernels_.emplace(prefix, std::move(k));
  return raw;
}

void Algebra::order(const std::vector<Value>& items) {
  for (const auto& item : items) {
    Value p = item.is_symbol() ? item : reval(item);
    if (p.is_integer()) alg_error("cannot ORDER a number");
    Kernel* k = kernel(p);
    k->order = next_forced_order_++;
  }
  invalidate();
}

bool Algebra::is_factored(const Kernel* k) const {
  for (Symbol* f : factors)
    if (k->head == f) return true;
  return false;
}

// ---- values ----------------------------------------------------------------

Value Algebra::make_value(const SQ& q) {
  if (auto n = as_integer(q)) return *n;
  return Value::adopt(new SqBox(q, epoch_));
}

std::optional<Value> Algebra::as_integer(const SQ& q) {
  if (q.den.is_one() && q.num.is_number()) return q.num.number();
  return std::nullopt;
}

SQ Algebra::value_sq(const Value& v) {
  switch (v.kind()) {
    case lisp::Kind::Fixnum:
    case lisp::Kind::Bignum:
      return Ring::number(v);
    case lisp::Kind::Nil:
      return SQ{};
    case lisp::Kind::Opaque: {
      if (auto* box = dynamic_cast<SqBox*>(&v.as<lisp::Opaque>())) {
        if (box->epoch != epoch_) {
          Value p = prepsq(box->sq);
          box->sq = simp(p);
          box->epoch = epoch_;
        }
        return box->sq;
      }
      alg_error("matrix used in a scalar expression");
    }
    case lisp::Kind::Symbol:
    case lisp::Kind::Pair:
      return simp(v);
    default:
      alg_error("not an algebraic value: " + in.prin1_string(v));
  }
}

std::int64_t Algebra::integer(const Value& u, const char* what) {
  SQ q = simp(u);
  auto n = as_integer(q);
  if (!n || !n->is_fixnum()) alg_error(std::string(what) + " is not an integer: " + in.prin1_string(prepsq(q)));
  return n->fixnum_value();
}

// ---- simp ------------------------------------------------------------------

SQ Algebra::simp(const Value& u) {
  SimpDepth guard(*this);
  switch (u.kind()) {
    case lisp::Kind::Fixnum:
    case lisp::Kind::Bignum:
      return Ring::number(u);
    case lisp::Kind::Nil:
      return SQ{};
    case lisp::Kind::Symbol:
      return simp_symbol(u.symbol_ptr(), u);
    case lisp::Kind::Opaque:
      return value_sq(u);
    case lisp::Kind::Pair:
      return simp_pair(u);
    case lisp::Kind::String:
      alg_error("string \"" + u.as<lisp::String>().text + "\" used in an algebraic expression");
    default:
      alg_error("illegal algebraic expression " + in.prin1_string(u));
  }
}

SQ Algebra::simp_symbol(Symbol* s, const Value& u) {
  if (s->local_depth > 0 && s->bound) {
    const Value& v = s->value;
    if (v.is_symbol() && v.symbol_ptr() == s) return kernel_sq(kernel(u));
    return value_sq(v);
  }
  auto g = globals_.find(s);
  if (g != globals_.end()) return value_sq(g->second);
  if (matrices_.count(s)) alg_error("matrix " + s->name + " used in a scalar expression");
  if (arrays_.count(s)) alg_error("array " + s->name + " used without indices");
  if (auto r = try_kernel_rules(u)) return *r;
  return kernel_sq(kernel(u));
}

SQ Algebra::simp_times(const SQ& a, const SQ& b) {
  SQ r = ring.multsq(a, b);
  return has_product_rules() ? subs2(r) : r;
}

SQ Algebra::simp_pair(const Value& u) {
  const Value& h = car(u);
  Symbol* head = h.symbol_ptr();
  if (head == nullptr) alg_error("illegal operator in " + in.prin1_string(u));
  const Value& args = cdr(u);
  if (head == n_.plus) {
    SQ r;
    for (Value p = args; p.is_pair(); p = cdr(p)) r = ring.addsq(r, simp(car(p)));
    return r;
  }
  if (head == n_.times) {
    SQ r = Ring::number(Value::fixnum(1));
    bool first = true;
    for (Value p = args; p.is_pair(); p = cdr(p)) {
      SQ f = simp(car(p));
      if (f.num.is_zero()) return SQ{};
      r = first ? f : ring.multsq(r, f);
      first = false;
    }
    return has_product_rules() ? subs2(r) : r;
  }
  if (head == n_.minus) {
    if (lisp::list_length(args) != 1) alg_error("MINUS takes one argument");
    return ring.negsq(simp(car(args)));
  }
  if (head == n_.difference) {
    if (lisp::list_length(args) != 2) alg_error("DIFFERENCE takes two arguments");
    return ring.addsq(simp(car(args)), ring.negsq(simp(car(cdr(args)))));
  }
  if (head == n_.quotient) {
    if (lisp::list_length(args) != 2) alg_error("QUOTIENT takes two arguments");
    SQ n = simp(car(args));
    SQ d = simp(car(cdr(args)));
    if (d.num.is_zero()) alg_error("zero divisor in " + in.prin1_string(u));
    return simp_times(n, ring.invsq(d));
  }
  if (head == n_.recip) {
    SQ d = simp(car(args));
    if (d.num.is_zero()) alg_error("zero divisor");
    return ring.invsq(d);
  }
  if (head == n_.expt) return simp_expt(u);
  if (head == n_.df) return simp_df(u);
  if (head == n_.sin || head == n_.cos) return simp_trig(head, u);
  if (head == n_.det) {
    if (lisp::list_length(args) != 1) alg_error("DET takes one argument");
    return det(mat_eval(car(args)));
  }
  if (head == n_.mat) alg_error("matrix used in a scalar expression");
  if (head == n_.setq) return value_sq(assign(car(args), car(cdr(args))));
  if (head == n_.if_) {
    if (boolean(car(args))) return simp(car(cdr(args)));
    return simp(car(cdr(cdr(args))));
  }
  if (head == n_.for_) return simp_for(u);
  if (head == n_.equal || head == n_.neq || head == n_.lessp || head == n_.greaterp || head == n_.leq ||
      head == n_.geq || head == n_.and_ || head == n_.or_ || head == n_.not_)
    alg_error("relation used as an algebraic value: " + in.prin1_string(u));
  return simp_operator(head, u);
}

SQ Algebra::simp_operator(Symbol* head, const Value& u) {
  if (auto* a = array(head)) return simp_array_ref(*a, head, u);
  if (auto* m = matrix(head)) {
    auto idx = eval_indices(cdr(u));
    if (!m->value) alg_error("matrix " + head->name + " has no value");
    if (idx.size() != 2) alg_error("matrix " + head->name + " needs two indices");
    if (m->epoch != epoch_) {
      refresh(*m->value);
      m->epoch = epoch_;
    }
    auto i = idx[0], j = idx[1];
    if (i < 1 || j < 1 || i > m->value->rows || j > m->value->cols)
      alg_error("index out of range for matrix " + head->name);
    return m->value->at(static_cast<int>(i - 1), static_cast<int>(j - 1));
  }
  if (is_procedure(head)) return simp_procedure_call(head, u);
  if (!is_operator(head)) {
    // G is the Dirac gamma matrix of the physics package; OPERATOR G frees the name.
    if (head->name == "G")
      alg_error("unsupported package: G (Dirac gamma matrices) needs the high energy physics package");
    declare_operator(head);
  }
  std::vector<Value> parts{Value::symbol(head)};
  for (Value p = cdr(u); p.is_pair(); p = cdr(p)) parts.push_back(reval(car(p)));
  return simp_kernel_form(lisp::list_from(parts));
}

SQ Algebra::simp_kernel_form(const Value& prefix) {
  if (auto r = try_kernel_rules(prefix)) return *r;
  return kernel_sq(kernel(prefix));
}

bool Algebra::is_procedure(Symbol* s) const {
  return s->fn.type == lisp::FunctionCell::Type::Expr && s->find_prop(n_.proctype) != nullptr;
}

SQ Algebra::simp_procedure_call(Symbol* head, const Value& u) {
  if (!call_procedure) alg_error("procedures are not available");
  std::vector<Value> args;
  for (Value p = cdr(u); p.is_pair(); p = cdr(p)) args.push_back(aeval(car(p)));
  return value_sq(call_procedure(head, args));
}

SQ Algebra::simp_trig(Symbol* head, const Value& u) {
  if (lisp::list_length(cdr(u)) != 1) alg_error(head->name + " takes one argument");
  SQ a = simp(car(cdr(u)));
  if (a.num.is_zero()) return Ring::number(Value::fixnum(head == n_.sin ? 0 : 1));
  bool negate = false;
  if (ring.nsign(ring.lnc(a.num)) < 0) {
    a = ring.negsq(a);
    negate = head == n_.sin;
  }
  SQ r = simp_kernel_form(lisp::list(Value::symbol(head), prepsq(a)));
  return negate ? ring.negsq(r) : r;
}

SQ Algebra::simp_expt(const Value& u) {
  if (lisp::list_length(cdr(u)) != 2) alg_error("EXPT takes two arguments");
  const Value& base = car(cdr(u));
  SQ e = simp(car(cdr(cdr(u))));
  auto n = as_integer(e);
  if (n && n->is_fixnum()) {
    std::int64_t k = n->fixnum_value();
    SQ b = simp(base);
    if (b.num.is_zero()) {
      if (k <= 0) alg_error("zero raised to a non-positive power");
      return SQ{};
    }
    if (k == 0) return Ring::number(Value::fixnum(1));
    std::int64_t m = k < 0 ? -k : k;
    SQ r;
    if (has_product_rules() && m > 1) {
      if (m > 4096) alg_error("exponent too large");
      r = b;
      for (std::int64_t i = 1; i < m; ++i) r = subs2(ring.multsq(r, b));
    } else {
      r = ring.exptsq(b, m);
      if (has_product_rules()) r = subs2(r);
    }
    return k < 0 ? ring.invsq(r) : r;
  }
  if (n) alg_error("exponent too large");
  SQ b = simp(base);
  if (b.num.is_zero()) return SQ{};
  if (b.num.is_one() && b.den.is_one()) return Ring::number(Value::fixnum(1));
  return simp_kernel_form(lisp::list(Value::symbol(n_.expt), prepsq(b), prepsq(e)));
}

SQ Algebra::simp_df(const Value& u) {
  Value args = cdr(u);
  if (!args.is_pair()) alg_error("DF needs an expression");
  SQ q = simp(car(args));
  args = cdr(args);
  if (!args.is_pair()) alg_error("DF needs a variable");
  while (args.is_pair()) {
    SQ v = simp(car(args));
    args = cdr(args);
    if (!v.den.is_one() || v.num.is_number() || !v.num.lc().is_one() || !v.num.red().is_zero() ||
        v.num.ldeg() != 1)
      alg_error("DF variable is not a kernel: " + in.prin1_string(prepsq(v)));
    Kernel* x = v.num.mvar();
    std::int64_t times = 1;
    if (args.is_pair()) {
      SQ o = simp(car(args));
      if (auto n = as_integer(o)) {
        if (!n->is_fixnum() || n->fixnum_value() < 0) alg_error("bad DF order");
        times = n->fixnum_value();
        args = cdr(args);
      }
    }
    for (std::int64_t i = 0; i < times && !q.num.is_zero(); ++i) q = diffsq(q, x);
  }
  return q;
}

SQ Algebra::simp_for(const Value& u) {
  // (FOR var (start step finish) action body)
  Value rest = cdr(u);
  Symbol* var = car(rest).symbol_ptr();
  const Value& ctl = car(cdr(rest));
  Symbol* action = car(cdr(cdr(rest))).symbol_ptr();
  const Value& body = car(cdr(cdr(cdr(rest))));
  if (var == nullptr) alg_error("FOR needs a variable");
  bool sum = action == n_.sum;
  if (!sum && action != n_.product) alg_error("FOR ... DO has no algebraic value");
  SQ acc = Ring::number(Value::fixnum(sum ? 0 : 1));
  for_loop(var, car(ctl), car(cdr(ctl)), car(cdr(cdr(ctl))), [&] {
    SQ v = simp(body);
    acc = sum ? ring.addsq(acc, v) : simp_times(acc, v);
  });
  return acc;
}

std::vector<std::int64_t> Algebra::eval_indices(const Value& args) {
  std::vector<std::int64_t> idx;
  for (Value p = args; p.is_pair(); p = cdr(p)) idx.push_back(integer(car(p), "index"));
  return idx;
}

std::size_t Algebra::array_offset(const ArrayValue& a, Symbol* name, const std::vector<std::int64_t>& idx) {
  if (idx.size() != a.bounds.size())
    alg_error("array " + name->name + " needs " + std::to_string(a.bounds.size()) + " indices");
  std::size_t off = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] > a.bounds[i]) {
      std::string where;
      for (std::size_t j = 0; j < idx.size(); ++j) where += (j ? "," : "") + std::to_string(idx[j]);
      alg_error("array index out of bounds: " + name->name + "(" + where + ")");
    }
    off = off * static_cast<std::size_t>(a.bounds[i] + 1) + static_cast<std::size_t>(idx[i]);
  }
  return off;
}

SQ Algebra::simp_array_ref(ArrayValue& a, Symbol* name, const Value& u) {
  auto idx = eval_indices(cdr(u));
  return value_sq(a.data[array_offset(a, name, idx)]);
}

bool Algebra::boolean(const Value& u) {
  if (u.is_pair()) {
    Symbol* h = car(u).symbol_ptr();
    const Value& args = cdr(u);
    if (h == n_.and_) {
      for (Value p = args; p.is_pair(); p = cdr(p))
        if (!boolean(car(p))) return false;
      return true;
    }
    if (h == n_.or_) {
      for (Value p = args; p.is_pair(); p = cdr(p))
        if (boolean(car(p))) return true;
      return false;
    }
    if (h == n_.not_) return !boolean(car(args));
    if (h == n_.equal || h == n_.neq || h == n_.lessp || h == n_.greaterp || h == n_.leq || h == n_.geq) {
      SQ d = ring.addsq(simp(car(args)), ring.negsq(simp(car(cdr(args)))));
      if (h == n_.equal) return d.num.is_zero();
      if (h == n_.neq) return !d.num.is_zero();
      if (!d.num.is_number() || !d.den.is_number())
        alg_error("cannot compare non-numeric values: " + in.prin1_string(prepsq(d)));
      int s = ring.nsign(d.num.number());
      if (h == n_.lessp) return s < 0;
      if (h == n_.greaterp) return s > 0;
      if (h == n_.leq) return s <= 0;
      return s >= 0;
    }
  }
  if (u.is_symbol() && u.symbol_ptr() == in.names().t) return true;
  return !simp(u).num.is_zero();
}

// ---- prefix conversion -----------------------------------------------------

Value Algebra::kernel_power(Kernel* k, int d) {
  if (d == 1) return k->prefix;
  return lisp::list(Value::symbol(n_.expt), k->prefix, Value::fixnum(d));
}

Value Algebra::prepterm(const Monomial& m, bool& negative) {
  negative = ring.nsign(m.coeff) < 0;
  Value c = negative ? ring.nneg(m.coeff) : m.coeff;
  std::vector<Value> fs;
  bool unit = c.is_fixnum() && c.fixnum_value() == 1;
  if (!unit || m.powers.empty()) fs.push_back(c);
  for (const auto& [k, d] : m.powers) fs.push_back(kernel_power(k, d));
  if (fs.size() == 1) return fs[0];
  fs.insert(fs.begin(), Value::symbol(n_.times));
  return lisp::list_from(fs);
}

Value Algebra::prepf(const SF& f) {
  if (f.is_number()) return f.number();
  std::vector<Monomial> ms;
  ring.monomials(f, ms);
  std::vector<Value> terms;
  for (const auto& m : ms) {
    bool neg;
    Value t = prepterm(m, neg);
    terms.push_back(neg ? lisp::list(Value::symbol(n_.minus), t) : t);
  }
  if (terms.size() == 1) return terms[0];
  terms.insert(terms.begin(), Value::symbol(n_.plus));
  return lisp::list_from(terms);
}

Value Algebra::prepsq(const SQ& q) {
  if (q.den.is_one()) return prepf(q.num);
  Value d = prepf(q.den);
  if (ring.is_monomial(q.num) && ring.nsign(ring.lnc(q.num)) < 0)
    return lisp::list(Value::symbol(n_.minus),
                      lisp::list(Value::symbol(n_.quotient), prepf(ring.negf(q.num)), d));
  return lisp::list(Value::symbol(n_.quotient), prepf(q.num), d);
}

// ---- top level evaluation and assignment -----------------------------------

Value Algebra::aeval(const Value& u) {
  if (u.is_pair() && car(u).symbol_ptr() == n_.setq) return assign(car(cdr(u)), car(cdr(cdr(u))));
  if (is_matrix_expr(u)) return Value::adopt(new MatBox(mat_eval(u), epoch_));
  return make_value(simp(u));
}

void Algebra::set_global(Symbol* s, Value v) {
  if (find_kernel(Value::symbol(s)) != nullptr) invalidate();
  globals_[s] = std::move(v);
}

const Value* Algebra::global(Symbol* s) const {
  auto it = globals_.find(s);
  return it == globals_.end() ? nullptr : &it->second;
}

Value Algebra::assign(const Value& target, const Value& rhs) {
  if (target.is_symbol() && !target.is_nil()) {
    Symbol* s = target.symbol_ptr();
    if (s == n_.e) alg_error("cannot assign to " + s->name);
    if (s->local_depth > 0) {
      Value v = aeval(rhs);
      s->value = v;
      assign_log_.push_back(target);
      return v;
    }
    if (auto* slot = matrix(s)) {
      Value v = aeval(rhs);
      if (!v.is_opaque() || dynamic_cast<MatBox*>(&v.as<lisp::Opaque>()) == nullptr)
        alg_error("matrix " + s->name + " assigned a scalar value");
      slot->value = v.as<MatBox>().m;
      slot->epoch = epoch_;
      assign_log_.push_back(target);
      return v;
    }
    if (arrays_.count(s)) alg_error("array " + s->name + " assigned without indices");
    Value v = aeval(rhs);
    if (v.is_opaque() && dynamic_cast<MatBox*>(&v.as<lisp::Opaque>()) != nullptr)
      alg_error("matrix value assigned to scalar " + s->name + "; declare it with MATRIX");
    set_global(s, v);
    assign_log_.push_back(target);
    return v;
  }
  if (target.is_pair() && car(target).symbol_ptr() != nullptr) {
    Symbol* h = car(target).symbol_ptr();
    if (auto* a = array(h)) {
      auto idx = eval_indices(cdr(target));
      std::size_t off = array_offset(*a, h, idx);
      Value v = make_value(simp(rhs));
      a->data[off] = v;
      std::vector<Value> lhs{car(target)};
      for (auto i : idx) lhs.push_back(Value::fixnum(i));
      assign_log_.push_back(lisp::list_from(lhs));
      return v;
    }
    if (auto* m = matrix(h)) {
      auto idx = eval_indices(cdr(target));
      if (!m->value) alg_error("matrix " + h->name + " has no value");
      if (idx.size() != 2 || idx[0] < 1 || idx[1] < 1 || idx[0] > m->value->rows || idx[1] > m->value->cols)
        alg_error("index out of range for matrix " + h->name);
      if (m->epoch != epoch_) {
        refresh(*m->value);
        m->epoch = epoch_;
      }
      SQ q = simp(rhs);
      m->value->at(static_cast<int>(idx[0] - 1), static_cast<int>(idx[1] - 1)) = q;
      assign_log_.push_back(lisp::list(car(target), Value::fixnum(idx[0]), Value::fixnum(idx[1])));
      return make_value(q);
    }
    if (h == n_.plus || h == n_.times || h == n_.minus || h == n_.difference || h == n_.quotient ||
        h == n_.expt)
      alg_error("illegal assignment target " + in.prin1_string(target));
    // f(args) := value behaves as LET f(args) = value.
    Value v = aeval(rhs);
    std::vector<Value> parts{car(target)};
    for (Value p = cdr(target); p.is_pair(); p = cdr(p)) parts.push_back(reval(car(p)));
    Value lhs = lisp::list_from(parts);
    let({}, lhs, v);
    assign_log_.push_back(lhs);
    return v;
  }
  alg_error("illegal assignment target " + in.prin1_string(target));
}

// ---- declarations ----------------------------------------------------------

void Algebra::declare_operator(Symbol* s) {
  if (arrays_.count(s) || matrices_.count(s)) alg_error(s->name + " is already declared");
  operators_.insert(s);
}

void Algebra::declare_array(Symbol* s, std::vector<int> bounds) {
  if (matrices_.count(s) || operators_.count(s)) alg_error(s->name + " is already declared");
  std::size_t n = 1;
  for (int b : bounds) {
    if (b < 0) alg_error("negative array bound for " + s->name);
    n *= static_cast<std::size_t>(b + 1);
    if (n > (std::size_t{1} << 24)) alg_error("array " + s->name + " too large");
  }
  ArrayValue a;
  a.bounds = std::move(bounds);
  a.data.assign(n, Value::fixnum(0));
  arrays_[s] = std::move(a);
}

ArrayValue* Algebra::array(Symbol* s) {
  auto it = arrays_.find(s);
  return it == arrays_.end() ? nullptr : &it->second;
}

void Algebra::declare_matrix(Symbol* s) {
  if (arrays_.count(s) || operators_.count(s)) alg_error(s->name + " is already declared");
  if (globals_.count(s)) globals_.erase(s);
  matrices_.try_emplace(s);
}

MatrixSlot* Algebra::matrix(Symbol* s) {
  auto it = matrices_.find(s);
  return it == matrices_.end() ? nullptr : &it->second;
}

void Algebra::clear_symbol(Symbol* s) {
  bool changed = globals_.erase(s) > 0;
  arrays_.erase(s);
  matrices_.erase(s);
  auto drop = [&](std::vector<Rule>& rules) {
    auto it = std::remove_if(rules.begin(), rules.end(), [&](const Rule& r) {
      if (r.factors.size() != 1) return false;
      const Value& t = r.factors[0].first;
      return (t.is_symbol() && t.symbol_ptr() == s);
    });
    if (it != rules.end()) changed = true;
    rules.erase(it, rules.end());
  };
  drop(kernel_rules_);
  drop(product_rules_);
  if (changed) invalidate();
}

}  // namespace rr::alg
