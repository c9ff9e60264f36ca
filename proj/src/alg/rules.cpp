// LET and CLEAR: kernel rules and product rules.

#include <algorithm>

#include "alg/algebra.hpp"

namespace rr::alg {

using lisp::car;
using lisp::cdr;

using Binding = std::vector<std::pair<Symbol*, Value>>;

static bool is_var(const std::vector<Symbol*>& vars, const Value& u) {
  return u.is_symbol() && std::find(vars.begin(), vars.end(), u.symbol_ptr()) != vars.end();
}

static bool mentions(const std::vector<Symbol*>& vars, const Value& u) {
  if (is_var(vars, u)) return true;
  if (!u.is_pair()) return false;
  for (Value p = u; p.is_pair(); p = cdr(p))
    if (mentions(vars, car(p))) return true;
  return false;
}

// Constant parts of a pattern are simplified; parts that mention a
// quantified variable are kept as written.
Value Algebra::rule_template(const std::vector<Symbol*>& vars, const Value& u) {
  if (u.is_symbol()) return u;
  if (!u.is_pair()) alg_error("illegal LET pattern " + in.prin1_string(u));
  Symbol* h = car(u).symbol_ptr();
  if (h == nullptr) alg_error("illegal LET pattern " + in.prin1_string(u));
  if (h != n_.sin && h != n_.cos && h != n_.df && h != n_.expt && !is_operator(h) && !array(h) && !matrix(h) &&
      !is_procedure(h))
    declare_operator(h);
  std::vector<Value> parts{car(u)};
  for (Value p = cdr(u); p.is_pair(); p = cdr(p)) {
    const Value& a = car(p);
    parts.push_back(mentions(vars, a) ? a : reval(a));
  }
  return lisp::list_from(parts);
}

Rule Algebra::make_rule(const std::vector<Symbol*>& vars, const Value& lhs) {
  Rule r;
  r.vars = vars;
  auto add = [&](const Value& f) {
    Value base = f;
    int pow = 1;
    if (f.is_pair() && car(f).symbol_ptr() == n_.expt) {
      const Value& ex = car(cdr(cdr(f)));
      if (!ex.is_fixnum() || ex.fixnum_value() < 1) alg_error("illegal power in LET pattern " + in.prin1_string(f));
      base = car(cdr(f));
      pow = static_cast<int>(ex.fixnum_value());
    }
    if (base.is_integer()) alg_error("number in LET pattern");
    Value t = rule_template(vars, base);
    for (auto& [tt, pp] : r.factors)
      if (lisp::StructuralEqual{}(tt, t)) {
        pp += pow;
        return;
      }
    r.factors.emplace_back(t, pow);
  };
  Symbol* h = lhs.is_pair() ? car(lhs).symbol_ptr() : nullptr;
  if (h == n_.plus || h == n_.difference)
    alg_error("sums are not allowed on the left of LET: " + in.prin1_string(lhs));
  if (h == n_.minus || h == n_.quotient || lhs.is_integer() || lhs.is_nil())
    alg_error("illegal LET pattern " + in.prin1_string(lhs));
  if (h == n_.times) {
    for (Value p = cdr(lhs); p.is_pair(); p = cdr(p)) add(car(p));
  } else {
    add(lhs);
  }
  std::vector<Value> key{Value::symbol(n_.times)};
  for (const auto& [t, p] : r.factors) key.push_back(lisp::list(Value::symbol(n_.expt), t, Value::fixnum(p)));
  r.key = rule_key(vars, lisp::list_from(key));
  return r;
}

Value Algebra::rule_key(const std::vector<Symbol*>& vars, const Value& lhs) {
  std::vector<std::pair<Symbol*, Value>> names;
  std::function<Value(const Value&)> walk = [&](const Value& u) -> Value {
    if (is_var(vars, u)) {
      for (const auto& [s, v] : names)
        if (s == u.symbol_ptr()) return v;
      Value v = in.sym("=" + std::to_string(names.size() + 1));
      names.emplace_back(u.symbol_ptr(), v);
      return v;
    }
    if (!u.is_pair()) return u;
    std::vector<Value> parts;
    for (Value p = u; p.is_pair(); p = cdr(p)) parts.push_back(walk(car(p)));
    return lisp::list_from(parts);
  };
  return walk(lhs);
}

void Algebra::let(const std::vector<Symbol*>& vars, const Value& lhs, const Value& rhs) {
  if (lhs.is_symbol() && !lhs.is_nil()) {
    Symbol* s = lhs.symbol_ptr();
    if (matrix(s)) {
      assign(lhs, rhs);
      return;
    }
    if (is_var(vars, lhs)) alg_error("LET pattern is a bare variable");
    if (s == n_.e || s == in.names().t) alg_error("cannot LET " + s->name);
  }
  Rule r = make_rule(vars, lhs);
  r.rhs = rhs;
  auto& rules = r.factors.size() == 1 && r.factors[0].second == 1 ? kernel_rules_ : product_rules_;
  rules.erase(std::remove_if(rules.begin(), rules.end(),
                             [&](const Rule& o) { return lisp::StructuralEqual{}(o.key, r.key); }),
              rules.end());
  rules.push_back(std::move(r));
  invalidate();
}

void Algebra::clear_rule(const std::vector<Symbol*>& vars, const Value& lhs) {
  Rule r = make_rule(vars, lhs);
  bool removed = false;
  for (auto* rules : {&kernel_rules_, &product_rules_}) {
    auto it = std::remove_if(rules->begin(), rules->end(),
                             [&](const Rule& o) { return lisp::StructuralEqual{}(o.key, r.key); });
    removed = removed || it != rules->end();
    rules->erase(it, rules->end());
  }
  if (removed) invalidate();
}

void Algebra::note_firing(const Rule& r) {
  if (++firings_ > kMaxFirings) {
    firings_ = 0;
    alg_error("circular rule definition detected for " + in.prin1_string(r.factors[0].first));
  }
}

bool Algebra::match(const Value& pat, const Value& subject, const std::vector<Symbol*>& vars, Binding& binding) {
  if (is_var(vars, pat)) {
    for (const auto& [s, v] : binding)
      if (s == pat.symbol_ptr()) return lisp::StructuralEqual{}(v, subject);
    binding.emplace_back(pat.symbol_ptr(), subject);
    return true;
  }
  if (!pat.is_pair()) return lisp::StructuralEqual{}(pat, subject);
  if (!subject.is_pair()) return false;
  Value p = pat, s = subject;
  for (; p.is_pair() && s.is_pair(); p = cdr(p), s = cdr(s))
    if (!match(car(p), car(s), vars, binding)) return false;
  return !p.is_pair() && !s.is_pair();
}

Value Algebra::substitute(const Value& form, const Binding& binding) {
  if (binding.empty()) return form;
  if (form.is_symbol()) {
    for (const auto& [s, v] : binding)
      if (s == form.symbol_ptr()) return v;
    return form;
  }
  if (!form.is_pair()) return form;
  std::vector<Value> parts;
  for (Value p = form; p.is_pair(); p = cdr(p)) parts.push_back(substitute(car(p), binding));
  return lisp::list_from(parts);
}

std::optional<SQ> Algebra::try_kernel_rules(const Value& prefix) {
  for (auto it = kernel_rules_.rbegin(); it != kernel_rules_.rend(); ++it) {
    const Value& t = it->factors[0].first;
    if (t.is_pair() != prefix.is_pair()) continue;
    if (t.is_pair() && !car(t).eq(car(prefix))) continue;
    Binding b;
    if (!match(t, prefix, it->vars, b)) continue;
    note_firing(*it);
    Value rhs = substitute(it->rhs, b);
    return simp(rhs);
  }
  return std::nullopt;
}

// Finds kernels of `m` for each factor of `r`, distinct and with enough
// degree. `used[j]` records which factor (1-based) claimed kernel j.
bool Algebra::match_monomial(const Rule& r, const Monomial& m, Binding& binding, std::vector<int>& used) {
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == r.factors.size()) return true;
    const auto& [pat, pow] = r.factors[i];
    for (std::size_t j = 0; j < m.powers.size(); ++j) {
      if (used[j] != 0 || m.powers[j].second < pow) continue;
      const Value& kp = m.powers[j].first->prefix;
      if (pat.is_pair() && (!kp.is_pair() || !car(pat).eq(car(kp)))) continue;
      std::size_t mark = binding.size();
      if (match(pat, kp, r.vars, binding)) {
        used[j] = static_cast<int>(i) + 1;
        if (rec(i + 1)) return true;
        used[j] = 0;
      }
      binding.resize(mark);
    }
    return false;
  };
  return rec(0);
}

SQ Algebra::subs2f(const SF& f) {
  SQ cur{f, SF::fix(1)};
  for (;;) {
    if (cur.num.is_number()) return cur;
    std::vector<Monomial> ms;
    ring.monomials(cur.num, ms);
    SQ out;
    SF rest;
    bool any = false;
    for (const auto& m : ms) {
      bool fired = false;
      for (auto it = product_rules_.rbegin(); it != product_rules_.rend() && !fired; ++it) {
        Binding b;
        std::vector<int> used(m.powers.size(), 0);
        if (!match_monomial(*it, m, b, used)) continue;
        Rule rule = *it;  // simp below may change the rule set
        note_firing(rule);
        Monomial rem{m.coeff, {}};
        for (std::size_t j = 0; j < m.powers.size(); ++j) {
          int d = m.powers[j].second;
          if (used[j] != 0) d -= rule.factors[static_cast<std::size_t>(used[j] - 1)].second;
          if (d > 0) rem.powers.emplace_back(m.powers[j].first, d);
        }
        SQ repl = simp(substitute(rule.rhs, b));
        out = ring.addsq(out, ring.multsq(repl, SQ{ring.from_monomial(rem), SF::fix(1)}));
        fired = any = true;
      }
      if (!fired) rest = ring.addf(rest, ring.from_monomial(m));
    }
    if (!any) return cur;
    SQ next = ring.addsq(out, SQ{rest, SF::fix(1)});
    cur = cur.den.is_one() ? next : ring.multsq(next, SQ{SF::fix(1), cur.den});
  }
}

SQ Algebra::subs2(const SQ& q) {
  if (product_rules_.empty()) return q;
  SQ n = subs2f(q.num);
  if (q.den.is_number()) return ring.multsq(n, SQ{SF::fix(1), q.den});
  SQ d = subs2f(q.den);
  if (d.num.is_zero()) alg_error("zero divisor after substitution");
  return ring.multsq(n, ring.invsq(d));
}

}  // namespace rr::alg
