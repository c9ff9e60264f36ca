// Differentiation of standard quotients.

#include <algorithm>

#include "alg/algebra.hpp"

namespace rr::alg {

using lisp::car;
using lisp::cdr;

bool Algebra::depends(const Value& u, const Value& var) {
  if (lisp::StructuralEqual{}(u, var)) return true;
  if (!u.is_pair()) return false;
  for (Value p = cdr(u); p.is_pair(); p = cdr(p))
    if (depends(car(p), var)) return true;
  return false;
}

SQ Algebra::diffsq(const SQ& q, Kernel* x) {
  if (depoch_ != epoch_) {
    dcache_.clear();
    depoch_ = epoch_;
  }
  SQ dn = diff_sf(q.num, x);
  if (q.den.is_number()) return ring.multsq(dn, SQ{SF::fix(1), q.den});
  SQ dd = diff_sf(q.den, x);
  if (dd.num.is_zero()) return ring.multsq(dn, SQ{SF::fix(1), q.den});
  SQ d{q.den, SF::fix(1)};
  SQ top = ring.addsq(ring.multsq(dn, d), ring.negsq(ring.multsq(SQ{q.num, SF::fix(1)}, dd)));
  return ring.multsq(top, ring.invsq(ring.multsq(d, d)));
}

SQ Algebra::diff_sf(const SF& f, Kernel* x) {
  if (f.is_number()) return SQ{};
  Kernel* k = f.mvar();
  int n = f.ldeg();
  SQ r = diff_sf(f.red(), x);
  SQ dlc = diff_sf(f.lc(), x);
  if (!dlc.num.is_zero()) r = ring.addsq(r, ring.multsq(SQ{SF::power(k, n), SF::fix(1)}, dlc));
  SQ dk = diff_kernel(k, x);
  if (!dk.num.is_zero()) {
    SF c = ring.multn(f.lc(), Value::fixnum(n));
    if (n > 1) c = ring.multf(SF::power(k, n - 1), c);
    r = ring.addsq(r, ring.multsq(SQ{c, SF::fix(1)}, dk));
  }
  return r;
}

SQ Algebra::diff_kernel(Kernel* k, Kernel* x) {
  if (k == x) return Ring::number(Value::fixnum(1));
  auto hit = dcache_.find({k, x});
  if (hit != dcache_.end()) return hit->second;
  SQ r;
  const Value& p = k->prefix;
  if (p.is_pair() && depends(p, x->prefix)) {
    Symbol* h = k->head;
    const Value& a = car(cdr(p));
    if (h == n_.sin || h == n_.cos) {
      SQ da = diffsq(simp(a), x);
      if (!da.num.is_zero()) {
        Symbol* other = h == n_.sin ? n_.cos : n_.sin;
        SQ t = simp_kernel_form(lisp::list(Value::symbol(other), a));
        r = ring.multsq(h == n_.sin ? t : ring.negsq(t), da);
      }
    } else if (h == n_.expt && a.is_symbol() && a.symbol_ptr() == n_.e) {
      SQ da = diffsq(simp(car(cdr(cdr(p)))), x);
      r = ring.multsq(kernel_sq(k), da);
    } else if (h == n_.expt && !depends(car(cdr(cdr(p))), x->prefix)) {
      const Value& ex = car(cdr(cdr(p)));
      SQ db = diffsq(simp(a), x);
      if (!db.num.is_zero()) {
        Value lower = lisp::list(Value::symbol(n_.expt), a,
                                 lisp::list(Value::symbol(n_.difference), ex, Value::fixnum(1)));
        r = ring.multsq(ring.multsq(simp(ex), simp(lower)), db);
      }
    } else if (h == n_.df && depends(a, x->prefix)) {
      std::vector<std::pair<Value, int>> vars;
      for (Value q = cdr(cdr(p)); q.is_pair();) {
        Value v = car(q);
        q = cdr(q);
        int n = 1;
        if (q.is_pair() && car(q).is_fixnum()) {
          n = static_cast<int>(car(q).fixnum_value());
          q = cdr(q);
        }
        vars.emplace_back(v, n);
      }
      r = df_kernel(a, std::move(vars), x);
    } else if (h != n_.df) {
      r = df_kernel(p, {}, x);
    }
  }
  dcache_[{k, x}] = r;
  return r;
}

// DF kernel of `base` with `vars` plus one more differentiation by x.
// Variables are kept in kernel order.
SQ Algebra::df_kernel(const Value& base, std::vector<std::pair<Value, int>> vars, Kernel* x) {
  const Value& xv = x->prefix;
  bool found = false;
  for (auto& [v, n] : vars)
    if (lisp::StructuralEqual{}(v, xv)) {
      ++n;
      found = true;
    }
  if (!found) vars.emplace_back(xv, 1);
  std::stable_sort(vars.begin(), vars.end(), [&](const auto& a, const auto& b) {
    return Ring::more_main(kernel(a.first), kernel(b.first));
  });
  std::vector<Value> parts{Value::symbol(n_.df), base};
  for (const auto& [v, n] : vars) {
    parts.push_back(v);
    if (n != 1) parts.push_back(Value::fixnum(n));
  }
  return simp_kernel_form(lisp::list_from(parts));
}

}  // namespace rr::alg
