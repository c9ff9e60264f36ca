#include "alg/sf.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace rr::alg {

SF SF::make(Kernel* k, int deg, SF lc, SF red) {
  SF f;
  f.node_ = std::make_shared<const SFNode>(SFNode{k, deg, std::move(lc), std::move(red)});
  return f;
}

// ---- coefficients ---------------------------------------------------------

Value Ring::nadd(const Value& a, const Value& b) { return in_.plus2(a, b); }
Value Ring::nsub(const Value& a, const Value& b) { return in_.difference(a, b); }
Value Ring::nmul(const Value& a, const Value& b) { return in_.times2(a, b); }
Value Ring::nneg(const Value& a) { return in_.minus(a); }
Value Ring::nquot(const Value& a, const Value& b) { return in_.quotient(a, b); }
Value Ring::nrem(const Value& a, const Value& b) { return in_.remainder(a, b); }
int Ring::nsign(const Value& a) { return in_.sign(a); }

Value Ring::ngcd(const Value& a, const Value& b) {
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  if (a.is_fixnum() && b.is_fixnum() && a.fixnum_value() != lo && b.fixnum_value() != lo)
    return Value::fixnum(std::gcd(a.fixnum_value(), b.fixnum_value()));
  Value x = nsign(a) < 0 ? nneg(a) : a;
  Value y = nsign(b) < 0 ? nneg(b) : b;
  while (!nzero(y)) {
    Value r = nrem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

// ---- standard forms -------------------------------------------------------

SF Ring::addf(const SF& f, const SF& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.is_number() && g.is_number()) return SF(nadd(f.number(), g.number()));
  if (f.is_number()) return SF::make(g.mvar(), g.ldeg(), g.lc(), addf(f, g.red()));
  if (g.is_number()) return SF::make(f.mvar(), f.ldeg(), f.lc(), addf(f.red(), g));
  if (f.mvar() == g.mvar()) {
    if (f.ldeg() == g.ldeg()) {
      SF c = addf(f.lc(), g.lc());
      SF r = addf(f.red(), g.red());
      if (c.is_zero()) return r;
      return SF::make(f.mvar(), f.ldeg(), std::move(c), std::move(r));
    }
    if (f.ldeg() > g.ldeg()) return SF::make(f.mvar(), f.ldeg(), f.lc(), addf(f.red(), g));
    return SF::make(g.mvar(), g.ldeg(), g.lc(), addf(f, g.red()));
  }
  if (more_main(f.mvar(), g.mvar())) return SF::make(f.mvar(), f.ldeg(), f.lc(), addf(f.red(), g));
  return SF::make(g.mvar(), g.ldeg(), g.lc(), addf(f, g.red()));
}

SF Ring::multn(const SF& f, const Value& n) {
  if (nzero(n) || f.is_zero()) return SF();
  if (n.is_fixnum() && n.fixnum_value() == 1) return f;
  if (f.is_number()) return SF(nmul(f.number(), n));
  return SF::make(f.mvar(), f.ldeg(), multn(f.lc(), n), multn(f.red(), n));
}

SF Ring::negf(const SF& f) { return multn(f, Value::fixnum(-1)); }

SF Ring::multf(const SF& f, const SF& g) {
  if (f.is_zero() || g.is_zero()) return SF();
  if (f.is_number()) return multn(g, f.number());
  if (g.is_number()) return multn(f, g.number());
  Kernel* x = f.mvar();
  Kernel* y = g.mvar();
  if (x == y) {
    SF lead = multf(f.lc(), g.lc());
    SF rest = addf(multf(f.red(), g), multf(SF::make(x, f.ldeg(), f.lc(), SF()), g.red()));
    return SF::make(x, f.ldeg() + g.ldeg(), std::move(lead), std::move(rest));
  }
  if (more_main(x, y)) return SF::make(x, f.ldeg(), multf(f.lc(), g), multf(f.red(), g));
  return SF::make(y, g.ldeg(), multf(f, g.lc()), multf(f, g.red()));
}

SF Ring::exptf(const SF& f, int n) {
  SF result = SF::fix(1);
  SF base = f;
  while (n > 0) {
    if (n & 1) result = multf(result, base);
    n >>= 1;
    if (n > 0) base = multf(base, base);
  }
  return result;
}

bool Ring::equalf(const SF& f, const SF& g) {
  if (f.node() == g.node()) {
    if (f.node() != nullptr) return true;
    return lisp::equal(f.number(), g.number());
  }
  if (f.is_number() || g.is_number()) return false;
  return f.mvar() == g.mvar() && f.ldeg() == g.ldeg() && equalf(f.lc(), g.lc()) && equalf(f.red(), g.red());
}

Value Ring::lnc(const SF& f) {
  const SF* p = &f;
  while (!p->is_number()) p = &p->lc();
  return p->number();
}

Value Ring::numcontent(const SF& f) {
  if (f.is_number()) return f.number();
  Value g = numcontent(f.lc());
  if (nunit(g)) return Value::fixnum(1);
  if (f.red().is_zero()) return g;
  return ngcd(g, numcontent(f.red()));
}

int Ring::mindeg(const SF& f, const Kernel* k) {
  if (f.is_number()) return 0;
  if (f.mvar() == k) {
    if (f.red().is_zero()) return f.ldeg();
    return std::min(f.ldeg(), mindeg(f.red(), k));
  }
  if (more_main(k, f.mvar())) return 0;
  int d = mindeg(f.lc(), k);
  if (d == 0 || f.red().is_zero()) return d;
  return std::min(d, mindeg(f.red(), k));
}

int Ring::degree(const SF& f, const Kernel* k) {
  if (f.is_number()) return 0;
  if (f.mvar() == k) return f.ldeg();
  if (more_main(k, f.mvar())) return 0;
  return std::max(degree(f.lc(), k), degree(f.red(), k));
}

bool Ring::is_monomial(const SF& f) {
  const SF* p = &f;
  while (!p->is_number()) {
    if (!p->red().is_zero()) return false;
    p = &p->lc();
  }
  return true;
}

SF Ring::normalize(const SF& f) { return nsign(lnc(f)) < 0 ? negf(f) : f; }

std::optional<SF> Ring::quotf(const SF& f, const SF& g) {
  if (g.is_zero()) throw DivisionByZero();
  if (f.is_zero()) return SF();
  if (g.is_number()) {
    if (g.is_one()) return f;
    if (f.is_number()) {
      if (!nzero(nrem(f.number(), g.number()))) return std::nullopt;
      return SF(nquot(f.number(), g.number()));
    }
    auto c = quotf(f.lc(), g);
    if (!c) return std::nullopt;
    auto r = quotf(f.red(), g);
    if (!r) return std::nullopt;
    return SF::make(f.mvar(), f.ldeg(), std::move(*c), std::move(*r));
  }
  if (f.is_number()) return std::nullopt;
  if (f.mvar() != g.mvar()) {
    if (more_main(g.mvar(), f.mvar())) return std::nullopt;
    auto c = quotf(f.lc(), g);
    if (!c) return std::nullopt;
    auto r = quotf(f.red(), g);
    if (!r) return std::nullopt;
    return SF::make(f.mvar(), f.ldeg(), std::move(*c), std::move(*r));
  }
  Kernel* x = f.mvar();
  SF q;
  SF r = f;
  while (!r.is_zero()) {
    if (r.is_number() || r.mvar() != x || r.ldeg() < g.ldeg()) return std::nullopt;
    auto c = quotf(r.lc(), g.lc());
    if (!c) return std::nullopt;
    int d = r.ldeg() - g.ldeg();
    SF t = d == 0 ? std::move(*c) : SF::make(x, d, std::move(*c), SF());
    r = addf(r, negf(multf(t, g)));
    q = addf(q, t);
  }
  return q;
}

SF Ring::gcd_monomial(const SF& m, const SF& g) {
  // m = c * k1**d1 * k2**d2 ...; the gcd keeps each kernel at its smallest
  // degree in g.
  std::vector<std::pair<Kernel*, int>> powers;
  const SF* p = &m;
  while (!p->is_number()) {
    int d = std::min(p->ldeg(), mindeg(g, p->mvar()));
    if (d > 0) powers.emplace_back(p->mvar(), d);
    p = &p->lc();
  }
  Value c = ngcd(p->number(), numcontent(g));
  SF r(c);
  for (auto it = powers.rbegin(); it != powers.rend(); ++it) r = SF::make(it->first, it->second, std::move(r), SF());
  return r;
}

SF Ring::gcd_coeffs(const SF& f, const SF& g, const Kernel* x) {
  // g has x as main variable, f does not: gcd(f, g) = gcd(f, coefficients of g in x).
  SF r = f;
  const SF* p = &g;
  while (!p->is_number() && p->mvar() == x) {
    r = gcdf(r, p->lc());
    if (r.is_one()) return r;
    p = &p->red();
  }
  if (!p->is_zero()) r = gcdf(r, *p);
  return r;
}

SF Ring::content(const SF& f, const Kernel* x) {
  SF c;
  const SF* p = &f;
  while (!p->is_number() && p->mvar() == x) {
    c = gcdf(c, p->lc());
    if (c.is_one()) return c;
    p = &p->red();
  }
  if (!p->is_zero()) c = gcdf(c, *p);
  return c;
}

SF Ring::prem(SF a, const SF& b, Kernel* x) {
  int db = b.ldeg();
  const SF& lb = b.lc();
  while (!a.is_zero() && !a.is_number() && a.mvar() == x && a.ldeg() >= db) {
    int d = a.ldeg() - db;
    SF t = d == 0 ? a.lc() : SF::make(x, d, a.lc(), SF());
    a = addf(multf(lb, a), negf(multf(t, b)));
  }
  return a;
}

SF Ring::prs(SF a, SF b, Kernel* x) {
  if (a.ldeg() < b.ldeg()) std::swap(a, b);
  for (;;) {
    SF r = prem(a, b, x);
    if (r.is_zero()) return normalize(b);
    if (r.is_number() || r.mvar() != x) return SF::fix(1);
    SF c = content(r, x);
    a = std::move(b);
    b = *quotf(r, c);
  }
}

SF Ring::gcdf(const SF& f, const SF& g) {
  if (f.is_zero()) return g.is_zero() ? g : normalize(g);
  if (g.is_zero()) return normalize(f);
  if (f.is_number()) return SF(ngcd(f.number(), numcontent(g)));
  if (g.is_number()) return SF(ngcd(g.number(), numcontent(f)));
  if (equalf(f, g)) return normalize(f);
  if (is_monomial(f)) return gcd_monomial(f, g);
  if (is_monomial(g)) return gcd_monomial(g, f);
  Kernel* x = f.mvar();
  Kernel* y = g.mvar();
  if (x != y) {
    if (more_main(x, y)) return gcd_coeffs(g, f, x);
    return gcd_coeffs(f, g, y);
  }
  SF cf = content(f, x);
  SF cg = content(g, x);
  SF c = gcdf(cf, cg);
  SF pf = *quotf(f, cf);
  SF pg = *quotf(g, cg);
  return normalize(multf(c, prs(std::move(pf), std::move(pg), x)));
}

void Ring::monomials_rec(const SF& f, Monomial& prefix, std::vector<Monomial>& out) {
  const SF* p = &f;
  while (!p->is_zero()) {
    if (p->is_number()) {
      out.push_back(Monomial{nmul(prefix.coeff, p->number()), prefix.powers});
      return;
    }
    prefix.powers.emplace_back(p->mvar(), p->ldeg());
    monomials_rec(p->lc(), prefix, out);
    prefix.powers.pop_back();
    p = &p->red();
  }
}

void Ring::monomials(const SF& f, std::vector<Monomial>& out) {
  Monomial m{Value::fixnum(1), {}};
  monomials_rec(f, m, out);
}

SF Ring::from_monomial(const Monomial& m) {
  // Powers may arrive in any order; sort least main first so each wraps the last.
  auto powers = m.powers;
  std::sort(powers.begin(), powers.end(), [](auto& a, auto& b) { return more_main(b.first, a.first); });
  SF r(m.coeff);
  if (r.is_zero()) return r;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (i + 1 < powers.size() && powers[i + 1].first == powers[i].first) {
      powers[i + 1].second += powers[i].second;
      continue;
    }
    r = SF::make(powers[i].first, powers[i].second, std::move(r), SF());
  }
  return r;
}

// ---- standard quotients ---------------------------------------------------

SQ Ring::canonsq(SF n, SF d) {
  if (d.is_zero()) throw DivisionByZero();
  if (n.is_zero()) return SQ{};
  if (mcd && !d.is_one()) {
    SF g = gcdf(n, d);
    if (!g.is_one()) {
      n = *quotf(n, g);
      d = *quotf(d, g);
    }
  }
  if (nsign(lnc(d)) < 0) {
    n = negf(n);
    d = negf(d);
  }
  return SQ{std::move(n), std::move(d)};
}

SQ Ring::addsq(const SQ& a, const SQ& b) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  if (a.den.is_one() && b.den.is_one()) return SQ{addf(a.num, b.num), SF::fix(1)};
  if (equalf(a.den, b.den)) return canonsq(addf(a.num, b.num), a.den);
  if (!mcd) return canonsq(addf(multf(a.num, b.den), multf(b.num, a.den)), multf(a.den, b.den));
  SF g = gcdf(a.den, b.den);
  SF ad = *quotf(a.den, g);
  SF bd = *quotf(b.den, g);
  SF n = addf(multf(a.num, bd), multf(b.num, ad));
  SF d = multf(ad, b.den);
  if (n.is_zero()) return SQ{};
  // Only the shared factor g can divide the new numerator.
  if (!g.is_one()) {
    SF h = gcdf(n, g);
    if (!h.is_one()) {
      n = *quotf(n, h);
      d = *quotf(d, h);
    }
  }
  if (nsign(lnc(d)) < 0) {
    n = negf(n);
    d = negf(d);
  }
  return SQ{std::move(n), std::move(d)};
}

SQ Ring::negsq(const SQ& a) { return SQ{negf(a.num), a.den}; }

SQ Ring::multsq(const SQ& a, const SQ& b) {
  if (a.num.is_zero() || b.num.is_zero()) return SQ{};
  if (a.den.is_one() && b.den.is_one()) return SQ{multf(a.num, b.num), SF::fix(1)};
  if (!mcd) return canonsq(multf(a.num, b.num), multf(a.den, b.den));
  SF g1 = gcdf(a.num, b.den);
  SF g2 = gcdf(b.num, a.den);
  SF an = g1.is_one() ? a.num : *quotf(a.num, g1);
  SF bd = g1.is_one() ? b.den : *quotf(b.den, g1);
  SF bn = g2.is_one() ? b.num : *quotf(b.num, g2);
  SF ad = g2.is_one() ? a.den : *quotf(a.den, g2);
  SF n = multf(an, bn);
  SF d = multf(ad, bd);
  if (nsign(lnc(d)) < 0) {
    n = negf(n);
    d = negf(d);
  }
  return SQ{std::move(n), std::move(d)};
}

SQ Ring::invsq(const SQ& a) {
  if (a.num.is_zero()) throw DivisionByZero();
  SF n = a.den;
  SF d = a.num;
  if (nsign(lnc(d)) < 0) {
    n = negf(n);
    d = negf(d);
  }
  return SQ{std::move(n), std::move(d)};
}

SQ Ring::exptsq(const SQ& a, std::int64_t n) {
  if (n < 0) {
    if (a.num.is_zero()) throw DivisionByZero();
    return exptsq(invsq(a), -n);
  }
  if (n == 0) return number(Value::fixnum(1));
  if (n > std::numeric_limits<int>::max()) throw lisp::LispError("exponent too large");
  // A quotient in lowest terms stays in lowest terms under powers.
  return SQ{exptf(a.num, static_cast<int>(n)), exptf(a.den, static_cast<int>(n))};
}

}  // namespace rr::alg
