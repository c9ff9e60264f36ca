// Fixnum arithmetic and the kernel half of the bignum representation. The
// kernel can build, inspect and print bignums, but every arithmetic operation
// that cannot be done exactly in a machine word is handed to the prelude.

#include <cctype>
#include <limits>

#include "lisp/interp.hpp"

namespace rr::lisp {

namespace {

void require_integer(Interp& in, const Value& v, const char* who) {
  if (!v.is_integer()) throw LispError(std::string("non-numeric argument to ") + who + ": " + in.prin1_string(v));
}

}  // namespace

Value Interp::big_call(Symbol* fn, const Value& a, const Value& b) {
  Value args[2] = {a, b};
  return call(fn, args);
}

Value Interp::plus2(const Value& a, const Value& b) {
  if (a.is_fixnum() && b.is_fixnum()) {
    std::int64_t r;
    if (!__builtin_add_overflow(a.fixnum_value(), b.fixnum_value(), &r)) return Value::fixnum(r);
  }
  require_integer(*this, a, "PLUS2");
  require_integer(*this, b, "PLUS2");
  return big_call(names_.bigadd, a, b);
}

Value Interp::difference(const Value& a, const Value& b) {
  if (a.is_fixnum() && b.is_fixnum()) {
    std::int64_t r;
    if (!__builtin_sub_overflow(a.fixnum_value(), b.fixnum_value(), &r)) return Value::fixnum(r);
  }
  require_integer(*this, a, "DIFFERENCE");
  require_integer(*this, b, "DIFFERENCE");
  return big_call(names_.bigdifference, a, b);
}

Value Interp::times2(const Value& a, const Value& b) {
  if (a.is_fixnum() && b.is_fixnum()) {
    std::int64_t r;
    if (!__builtin_mul_overflow(a.fixnum_value(), b.fixnum_value(), &r)) return Value::fixnum(r);
  }
  require_integer(*this, a, "TIMES2");
  require_integer(*this, b, "TIMES2");
  return big_call(names_.bigtimes, a, b);
}

Value Interp::quotient(const Value& a, const Value& b) {
  require_integer(*this, a, "QUOTIENT");
  require_integer(*this, b, "QUOTIENT");
  if (b.is_fixnum() && b.fixnum_value() == 0) throw LispError("division by zero");
  if (a.is_fixnum() && b.is_fixnum()) {
    std::int64_t x = a.fixnum_value(), y = b.fixnum_value();
    if (!(x == std::numeric_limits<std::int64_t>::min() && y == -1)) return Value::fixnum(x / y);
  }
  return big_call(names_.bigquotient, a, b);
}

Value Interp::remainder(const Value& a, const Value& b) {
  require_integer(*this, a, "REMAINDER");
  require_integer(*this, b, "REMAINDER");
  if (b.is_fixnum() && b.fixnum_value() == 0) throw LispError("division by zero");
  if (a.is_fixnum() && b.is_fixnum()) {
    std::int64_t y = b.fixnum_value();
    if (y == -1) return Value::fixnum(0);
    return Value::fixnum(a.fixnum_value() % y);
  }
  return big_call(names_.bigremainder, a, b);
}

Value Interp::minus(const Value& a) {
  if (a.is_fixnum() && a.fixnum_value() != std::numeric_limits<std::int64_t>::min())
    return Value::fixnum(-a.fixnum_value());
  require_integer(*this, a, "MINUS");
  return big_call(names_.bigdifference, Value::fixnum(0), a);
}

bool Interp::lessp(const Value& a, const Value& b) {
  if (a.is_fixnum() && b.is_fixnum()) return a.fixnum_value() < b.fixnum_value();
  require_integer(*this, a, "LESSP");
  require_integer(*this, b, "LESSP");
  return !big_call(names_.biglessp, a, b).is_nil();
}

int Interp::sign(const Value& a) {
  if (a.is_fixnum()) return (a.fixnum_value() > 0) - (a.fixnum_value() < 0);
  if (a.is_bignum()) return a.as<Bignum>().sign;
  throw LispError("non-numeric argument: " + prin1_string(a));
}

Value Interp::make_integer(int sign, const Value& digits) {
  if (sign != 1 && sign != -1) throw LispError("bad bignum sign");
  std::vector<std::int64_t> d;
  for (Value p = digits; p.is_pair(); p = cdr(p)) {
    const Value& x = car(p);
    if (!x.is_fixnum() || x.fixnum_value() < 0 || x.fixnum_value() >= kBigRadix)
      throw LispError("bad bignum digit " + prin1_string(x));
    d.push_back(x.fixnum_value());
  }
  while (!d.empty() && d.back() == 0) d.pop_back();
  if (d.empty()) return Value::fixnum(0);
  // Fits in a fixnum? Accumulate the magnitude as unsigned with overflow checks.
  unsigned __int128 mag = 0;
  bool fits = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    mag = mag * kBigRadix + static_cast<unsigned>(d[i]);
    if (mag > (static_cast<unsigned __int128>(1) << 64)) {
      fits = false;
      break;
    }
  }
  if (fits) {
    constexpr unsigned __int128 max_pos = static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max());
    if (sign > 0 && mag <= max_pos) return Value::fixnum(static_cast<std::int64_t>(mag));
    if (sign < 0 && mag <= max_pos + 1) return Value::fixnum(static_cast<std::int64_t>(-static_cast<__int128>(mag)));
  }
  std::vector<Value> ds;
  ds.reserve(d.size());
  for (auto x : d) ds.push_back(Value::fixnum(x));
  return Value::adopt(new Bignum(sign, list_from(ds)));
}

bool looks_like_integer(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) i = 1;
  if (i >= text.size()) return false;
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  return true;
}

Value parse_integer(Interp& in, std::string_view text) {
  int sign = 1;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    if (text[0] == '-') sign = -1;
    text.remove_prefix(1);
  }
  // Group decimal characters four at a time from the right.
  std::vector<Value> digits;
  std::size_t end = text.size();
  while (end > 0) {
    std::size_t start = end >= kBigRadixDigits ? end - kBigRadixDigits : 0;
    std::int64_t d = 0;
    for (std::size_t i = start; i < end; ++i) d = d * 10 + (text[i] - '0');
    digits.push_back(Value::fixnum(d));
    end = start;
  }
  return in.make_integer(sign, list_from(digits));
}

namespace {

std::string bignum_text(const Bignum& b) {
  std::vector<std::int64_t> d;
  for (Value p = b.digits; p.is_pair(); p = cdr(p)) d.push_back(car(p).fixnum_value());
  std::string s = b.sign < 0 ? "-" : "";
  s += std::to_string(d.back());
  for (std::size_t i = d.size() - 1; i-- > 0;) {
    std::string part = std::to_string(d[i]);
    s.append(kBigRadixDigits - part.size(), '0');
    s += part;
  }
  return s;
}

bool plain_symbol_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (std::islower(u)) return false;
  if (std::isspace(u)) return false;
  switch (c) {
    case '(':
    case ')':
    case '[':
    case ']':
    case '\'':
    case '"':
    case '%':
    case '!':
      return false;
    default:
      return u > 32 && u < 127;
  }
}

std::string escaped_symbol(const std::string& name) {
  if (name.empty()) return "!";  // unreachable for interned names built by the reader
  std::string out;
  bool numeric = looks_like_integer(name) || name == ".";
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (!plain_symbol_char(c) || (numeric && i == 0)) out += '!';
    out += c;
  }
  return out;
}

void print_to(std::string& out, const Value& v, bool escape) {
  switch (v.kind()) {
    case Kind::Nil:
      out += "NIL";
      return;
    case Kind::Fixnum:
      out += std::to_string(v.fixnum_value());
      return;
    case Kind::Symbol:
      out += escape ? escaped_symbol(v.symbol_ptr()->name) : v.symbol_ptr()->name;
      return;
    case Kind::Bignum:
      out += bignum_text(v.as<Bignum>());
      return;
    case Kind::String:
      if (!escape) {
        out += v.as<String>().text;
        return;
      }
      out += '"';
      for (char c : v.as<String>().text) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
      return;
    case Kind::Vector: {
      out += "[";
      bool first = true;
      for (const auto& e : v.as<Vector>().items) {
        if (!first) out += ' ';
        first = false;
        print_to(out, e, escape);
      }
      out += "]";
      return;
    }
    case Kind::Opaque:
      out += "#<" + v.as<Opaque>().describe() + ">";
      return;
    case Kind::Pair: {
      out += '(';
      const Value* p = &v;
      bool first = true;
      for (; p->is_pair(); p = &p->as<Pair>().cdr) {
        if (!first) out += ' ';
        first = false;
        print_to(out, p->as<Pair>().car, escape);
      }
      if (!p->is_nil()) {
        out += " . ";
        print_to(out, *p, escape);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string Interp::prin1_string(const Value& v) {
  std::string s;
  print_to(s, v, true);
  return s;
}

std::string Interp::princ_string(const Value& v) {
  std::string s;
  print_to(s, v, false);
  return s;
}

Value Interp::explode(const Value& atom) {
  if (atom.is_pair()) throw LispError("EXPLODE of a pair: " + prin1_string(atom));
  std::string text = princ_string(atom);
  std::vector<Value> chars;
  for (char c : text) chars.push_back(sym(std::string(1, c)));
  return list_from(chars);
}

Value Interp::compress(const Value& chars) {
  if (!chars.is_pair()) throw LispError("COMPRESS of an empty list");
  std::string text;
  for (Value p = chars; p.is_pair(); p = cdr(p)) {
    const Value& c = car(p);
    if (c.is_fixnum() && c.fixnum_value() >= 0 && c.fixnum_value() <= 9) {
      text += static_cast<char>('0' + c.fixnum_value());
      continue;
    }
    if (!c.is_symbol()) throw LispError("COMPRESS element is not a character: " + prin1_string(c));
    const std::string& n = symbol_of(c).name;
    if (n.size() != 1) throw LispError("COMPRESS element is not a single character: " + n);
    text += n;
  }
  if (looks_like_integer(text)) return parse_integer(*this, text);
  return sym(text);
}

bool Interp::liter(const Value& x) {
  if (x.kind() != Kind::Symbol) return false;
  const std::string& n = x.symbol_ptr()->name;
  if (n.size() != 1) return false;
  int code = static_cast<unsigned char>(n[0]);
  return (code > 64 && code < 91) || (code > 96 && code < 123);
}

}  // namespace rr::lisp
