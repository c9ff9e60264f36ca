#include "out/printer.hpp"

#include <cctype>

namespace rr::out {

using lisp::car;
using lisp::cdr;

std::string Printer::symbol_name(const lisp::Symbol* s) {
  const std::string& n = s->name;
  std::string r;
  for (std::size_t i = 0; i < n.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(n[i]);
    bool ok = std::isupper(c) || (i > 0 && std::isdigit(c));
    if (!ok) r += '!';
    r += static_cast<char>(c);
  }
  return r;
}

int Printer::prec(const Value& u) const {
  if (u.is_integer()) return alg_.ring.nsign(u) < 0 ? 1 : 9;
  if (!u.is_pair()) return 9;
  auto& n = alg_.names();
  lisp::Symbol* h = car(u).symbol_ptr();
  if (h == n.plus || h == n.difference || h == n.minus) return 1;
  if (h == n.times || h == n.quotient) return 2;
  if (h == n.expt) return 3;
  if (other_prec) {
    int p = other_prec(u);
    if (p >= 0) return p;
  }
  return 9;
}

void Printer::emit_number(const Value& n, std::string& out) { out += alg_.in.prin1_string(n); }

void Printer::emit_sum_terms(const std::vector<std::pair<bool, Value>>& terms, bool hard, std::string& out) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [neg, t] = terms[i];
    if (i == 0) {
      if (neg) out += '-';
    } else {
      out += hard ? kHard : kSoft;
      out += neg ? " - " : " + ";
    }
    emit(t, Term, out);
  }
}

void Printer::emit(const Value& u, Ctx ctx, std::string& out) {
  int p = prec(u);
  bool paren = false;
  switch (ctx) {
    case Any:
      break;
    case Term:
      paren = p <= 1;
      break;
    case First:
      paren = p <= 1 || (u.is_pair() && car(u).symbol_ptr() == alg_.names().times);
      break;
    case Factor:
      paren = p <= 2;
      break;
    case Power:
      paren = p <= 3;
      break;
  }
  if (paren) out += '(';
  auto& n = alg_.names();
  if (u.is_integer()) {
    emit_number(u, out);
  } else if (u.is_nil()) {
    out += "NIL";
  } else if (u.is_symbol()) {
    std::string s;
    if (other && other(u, s))
      out += s;
    else
      out += symbol_name(u.symbol_ptr());
  } else if (u.is_string()) {
    std::string s;
    if (other && other(u, s))
      out += s;
    else
      out += '"' + u.as<lisp::String>().text + '"';
  } else if (u.is_opaque()) {
    if (dynamic_cast<alg::SqBox*>(&u.as<lisp::Opaque>()) != nullptr)
      out += sq(alg_.value_sq(u));
    else
      out += alg_.in.prin1_string(u);
  } else if (!u.is_pair()) {
    out += alg_.in.prin1_string(u);
  } else {
    lisp::Symbol* h = car(u).symbol_ptr();
    const Value& args = cdr(u);
    if (h == n.plus) {
      std::vector<std::pair<bool, Value>> terms;
      std::size_t count = lisp::list_length(args);
      std::size_t i = 0;
      for (Value q = args; q.is_pair(); q = cdr(q), ++i) {
        const Value& t = car(q);
        bool minus = t.is_pair() && car(t).symbol_ptr() == n.minus && lisp::list_length(cdr(t)) == 1;
        // In exact mode a two-term a + (-b) keeps its parentheses, since a - b
        // reads back as a difference.
        if (minus && !(exact && count == 2 && i == 1))
          terms.emplace_back(true, car(cdr(t)));
        else if (!exact && t.is_integer() && alg_.ring.nsign(t) < 0)
          terms.emplace_back(true, alg_.ring.nneg(t));
        else
          terms.emplace_back(false, t);
      }
      emit_sum_terms(terms, false, out);
    } else if (h == n.difference) {
      const Value& a = car(args);
      if (a.is_pair() && car(a).symbol_ptr() == n.minus && lisp::list_length(cdr(a)) == 1) {
        out += '-';
        emit(car(cdr(a)), Term, out);
      } else {
        emit(a, Term, out);
      }
      out += kSoft;
      out += " - ";
      emit(car(cdr(args)), Term, out);
    } else if (h == n.minus && lisp::list_length(args) == 1) {
      out += '-';
      emit(car(args), Term, out);
    } else if (h == n.times && lisp::list_length(args) >= 2) {
      bool first = true;
      for (Value q = args; q.is_pair(); q = cdr(q)) {
        if (!first) out += '*';
        emit(car(q), first ? First : Factor, out);
        first = false;
      }
    } else if (h == n.quotient && lisp::list_length(args) == 2) {
      emit(car(args), Term, out);
      out += '/';
      emit(car(cdr(args)), Factor, out);
    } else if (h == n.expt && lisp::list_length(args) == 2) {
      emit(car(args), Power, out);
      out += "**";
      emit(car(cdr(args)), Power, out);
    } else {
      std::string s;
      if (other && other(u, s)) {
        out += s;
      } else {
        if (h != nullptr)
          out += symbol_name(h);
        else
          emit(car(u), Power, out);
        out += '(';
        bool first = true;
        for (Value q = args; q.is_pair(); q = cdr(q)) {
          if (!first) {
            out += ',';
            out += kSoft;
          }
          emit(car(q), Any, out);
          first = false;
        }
        out += ')';
      }
    }
  }
  if (paren) out += ')';
}

std::string Printer::prefix(const Value& u) {
  std::string out;
  emit(u, Any, out);
  return out;
}

std::string Printer::sq(const SQ& q) {
  auto& ring = alg_.ring;
  auto& n = alg_.names();
  if (q.num.is_zero()) return "0";
  bool grouped = false;
  std::vector<alg::Monomial> ms;
  ring.monomials(q.num, ms);
  if (!alg_.factors.empty())
    for (const auto& m : ms)
      for (const auto& [k, d] : m.powers)
        if (alg_.is_factored(k)) grouped = true;
  bool has_den = !q.den.is_one();
  std::string out;
  if (!grouped && !(alg_.sw.div && has_den)) {
    if (has_den) {
      emit(alg_.prepsq(q), Any, out);
      return out;
    }
    std::vector<std::pair<bool, Value>> terms;
    for (const auto& m : ms) {
      bool neg;
      Value t = alg_.prepterm(m, neg);
      terms.emplace_back(neg, t);
    }
    emit_sum_terms(terms, alg_.sw.list, out);
    return out;
  }

  Value den = alg_.prepf(q.den);
  auto divide = [&](alg::Monomial m, bool& neg) -> Value {
    // A numeric denominator is folded into the coefficient where possible.
    if (has_den && q.den.is_number()) {
      Value d = q.den.number();
      Value g = ring.ngcd(m.coeff, d);
      m.coeff = ring.nquot(m.coeff, g);
      d = ring.nquot(d, g);
      Value t = alg_.prepterm(m, neg);
      if (d.is_fixnum() && d.fixnum_value() == 1) return t;
      return lisp::list(Value::symbol(n.quotient), t, d);
    }
    if (!has_den) return alg_.prepterm(m, neg);
    // otherwise only the integer content of the denominator is shared
    Value g = ring.ngcd(m.coeff, ring.numcontent(q.den));
    Value d = den;
    if (!(g.is_fixnum() && g.fixnum_value() == 1)) {
      m.coeff = ring.nquot(m.coeff, g);
      d = alg_.prepf(*ring.quotf(q.den, alg::SF(g)));
    }
    Value t = alg_.prepterm(m, neg);
    return lisp::list(Value::symbol(n.quotient), t, d);
  };

  std::vector<std::pair<bool, Value>> terms;
  if (!grouped) {
    for (const auto& m : ms) {
      bool neg;
      Value t = divide(m, neg);
      terms.emplace_back(neg, t);
    }
    emit_sum_terms(terms, alg_.sw.list, out);
    return out;
  }

  // Group terms by their factored part, in order of first appearance.
  struct Group {
    std::vector<std::pair<alg::Kernel*, int>> head;
    std::vector<alg::Monomial> rest;
  };
  std::vector<Group> groups;
  std::vector<alg::Monomial> loose;
  for (const auto& m : ms) {
    Group g;
    alg::Monomial r{m.coeff, {}};
    for (const auto& kd : m.powers) (alg_.is_factored(kd.first) ? g.head : r.powers).push_back(kd);
    if (g.head.empty()) {
      loose.push_back(m);
      continue;
    }
    bool found = false;
    for (auto& og : groups)
      if (og.head == g.head) {
        og.rest.push_back(r);
        found = true;
        break;
      }
    if (!found) {
      g.rest.push_back(r);
      groups.push_back(std::move(g));
    }
  }
  for (const auto& g : groups) {
    std::vector<Value> parts{Value::symbol(n.times)};
    for (const auto& [k, d] : g.head)
      parts.push_back(d == 1 ? k->prefix : lisp::list(Value::symbol(n.expt), k->prefix, Value::fixnum(d)));
    bool neg = false;
    Value body;
    if (g.rest.size() == 1) {
      alg::Monomial r = g.rest[0];
      neg = ring.nsign(r.coeff) < 0;
      if (neg) r.coeff = ring.nneg(r.coeff);
      bool dummy;
      Value t = alg_.prepterm(r, dummy);
      if (!(t.is_fixnum() && t.fixnum_value() == 1)) body = t;
    } else {
      std::vector<Value> sum{Value::symbol(n.plus)};
      for (const auto& r : g.rest) {
        bool tneg;
        Value t = alg_.prepterm(r, tneg);
        sum.push_back(tneg ? lisp::list(Value::symbol(n.minus), t) : t);
      }
      body = lisp::list_from(sum);
    }
    if (!body.is_nil()) {
      if (body.is_pair() && car(body).symbol_ptr() == n.times)
        for (Value p = cdr(body); p.is_pair(); p = cdr(p)) parts.push_back(car(p));
      else
        parts.push_back(body);
    }
    Value t = parts.size() == 2 ? parts[1] : lisp::list_from(parts);
    if (has_den) t = lisp::list(Value::symbol(n.quotient), t, den);
    terms.emplace_back(neg, t);
  }
  for (const auto& m : loose) {
    bool neg;
    Value t = divide(m, neg);
    terms.emplace_back(neg, t);
  }
  emit_sum_terms(terms, alg_.sw.list, out);
  return out;
}

std::string Printer::plain(const std::string& marked) {
  std::string r;
  for (char c : marked)
    if (c != kSoft && c != kHard) r += c;
  return r;
}

std::vector<std::string> Printer::layout(const std::string& marked) const {
  std::vector<std::string> lines;
  std::string cur;
  std::string seg;
  std::size_t w = static_cast<std::size_t>(width < 16 ? 16 : width);
  auto place = [&](bool hard) {
    if (lines.empty() && cur.empty()) {
      cur = seg;
    } else if (hard || (cur.size() + seg.size() > w && cur.size() > 1)) {
      lines.push_back(cur);
      cur = " " + seg;
    } else {
      cur += seg;
    }
    seg.clear();
  };
  bool pending_hard = false;
  for (char c : marked) {
    if (c == kSoft || c == kHard) {
      place(pending_hard);
      pending_hard = c == kHard;
    } else {
      seg += c;
    }
  }
  place(pending_hard);
  lines.push_back(cur);
  // Anything still too long is cut at the width.
  std::vector<std::string> out;
  for (auto& l : lines) {
    while (l.size() > w) {
      out.push_back(l.substr(0, w));
      l = " " + l.substr(w);
    }
    out.push_back(l);
  }
  return out;
}

std::vector<std::string> Printer::join(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  for (const auto& l : lines) {
    if (!out.empty() && !l.empty() && l[0] == ' ')
      out.back() += l.substr(1);
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace rr::out
