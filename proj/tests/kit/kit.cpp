#include "kit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rlisp/parser.hpp"

namespace kit {

using rr::lisp::car;
using rr::lisp::cdr;
using rr::lisp::list;

std::string corpus_path(const std::string& name) { return std::string(RR_CORPUS_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string corpus_slice(const std::string& from, const std::string& to) {
  std::string all = read_text(corpus_path("alg.tst"));
  auto a = all.find(from);
  auto b = all.find(to, a);
  if (a == std::string::npos || b == std::string::npos) throw std::runtime_error("corpus marker missing");
  return all.substr(a, b - a);
}

Lab::Lab(int width, std::size_t storage) {
  rr::SessionConfig cfg;
  cfg.width = width;
  cfg.storage_limit = storage;
  s_ = std::make_unique<rr::Session>(cfg);
  s_->set_output([this](std::string_view t) { out.append(t); });
  s_->set_error_output([this](std::string_view t) { err.append(t); });
  act_ = std::make_unique<rr::lisp::Interp::Activation>(s_->interp());
}

Lab::~Lab() {
  act_.reset();
  s_.reset();
}

int Lab::run(const std::string& src) { return s_->run_source(src); }

Value Lab::parse(const std::string& expr) { return rr::rlisp::Parser(in(), expr).expression_only(); }

Value Lab::read(const std::string& lisp_text) { return rr::lisp::read_one(in(), lisp_text); }

SQ Lab::simp(const Value& prefix) { return alg().simp(prefix); }

mpz_class to_mpz(const Value& v) {
  if (v.is_fixnum()) return mpz_class(static_cast<long>(v.fixnum_value()));
  if (!v.is_bignum()) throw std::runtime_error("not an integer");
  const auto& b = v.as<rr::lisp::Bignum>();
  std::vector<long> d;
  for (Value p = b.digits; p.is_pair(); p = cdr(p)) d.push_back(static_cast<long>(car(p).fixnum_value()));
  mpz_class z = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) z = z * rr::lisp::kBigRadix + *it;
  return b.sign < 0 ? mpz_class(-z) : z;
}

Value from_mpz(rr::lisp::Interp& in, const mpz_class& z) { return rr::lisp::parse_integer(in, z.get_str()); }

namespace {

bool head_is(const Value& u, const char* name) {
  return u.is_pair() && car(u).is_symbol() && car(u).symbol_ptr() && car(u).symbol_ptr()->name == name;
}

std::vector<Value> args_of(const Value& u) { return rr::lisp::list_to_vector(cdr(u)); }

}  // namespace

std::optional<mpq_class> eval_exact(const Value& u, const ExactLeaf& leaf) {
  if (u.is_integer()) return mpq_class(to_mpz(u));
  if (!u.is_pair()) return leaf(u);
  auto a = args_of(u);
  auto ev = [&](const Value& x) { return eval_exact(x, leaf); };
  if (head_is(u, "PLUS") || head_is(u, "TIMES")) {
    bool plus = head_is(u, "PLUS");
    mpq_class r = plus ? 0 : 1;
    for (auto& x : a) {
      auto v = ev(x);
      if (!v) return std::nullopt;
      if (plus)
        r += *v;
      else
        r *= *v;
    }
    return r;
  }
  if (head_is(u, "DIFFERENCE") && a.size() == 2) {
    auto x = ev(a[0]), y = ev(a[1]);
    if (!x || !y) return std::nullopt;
    return mpq_class(*x - *y);
  }
  if (head_is(u, "MINUS") && a.size() == 1) {
    auto x = ev(a[0]);
    if (!x) return std::nullopt;
    return mpq_class(-*x);
  }
  if (head_is(u, "QUOTIENT") && a.size() == 2) {
    auto x = ev(a[0]), y = ev(a[1]);
    if (!x || !y || *y == 0) return std::nullopt;
    return mpq_class(*x / *y);
  }
  if (head_is(u, "EXPT") && a.size() == 2) {
    auto e = ev(a[1]);
    if (!e || e->get_den() != 1 || !e->get_num().fits_slong_p()) return leaf(u);
    long n = e->get_num().get_si();
    auto b = ev(a[0]);
    if (!b) return std::nullopt;
    if (n <= 0 && *b == 0) return std::nullopt;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), b->get_num().get_mpz_t(), static_cast<unsigned long>(std::labs(n)));
    mpz_pow_ui(den.get_mpz_t(), b->get_den().get_mpz_t(), static_cast<unsigned long>(std::labs(n)));
    mpq_class r = n >= 0 ? mpq_class(num, den) : mpq_class(den, num);
    r.canonicalize();
    return r;
  }
  return leaf(u);
}

long double eval_float(const Value& u, const FloatLeaf& leaf) {
  if (u.is_integer()) return static_cast<long double>(to_mpz(u).get_d());
  if (u.is_symbol() && u.symbol_ptr() && u.symbol_ptr()->name == "E") return std::numbers::e_v<long double>;
  if (!u.is_pair()) return leaf(u);
  auto a = args_of(u);
  auto ev = [&](const Value& x) { return eval_float(x, leaf); };
  if (head_is(u, "PLUS")) {
    long double r = 0;
    for (auto& x : a) r += ev(x);
    return r;
  }
  if (head_is(u, "TIMES")) {
    long double r = 1;
    for (auto& x : a) r *= ev(x);
    return r;
  }
  if (head_is(u, "DIFFERENCE")) return ev(a[0]) - ev(a[1]);
  if (head_is(u, "MINUS")) return -ev(a[0]);
  if (head_is(u, "QUOTIENT")) return ev(a[0]) / ev(a[1]);
  if (head_is(u, "EXPT")) {
    long double e = ev(a[1]);
    if (a[0].is_symbol() && a[0].symbol_ptr() && a[0].symbol_ptr()->name == "E") return std::exp(e);
    return std::pow(ev(a[0]), e);
  }
  if (head_is(u, "SIN") && a.size() == 1) return std::sin(ev(a[0]));
  if (head_is(u, "COS") && a.size() == 1) return std::cos(ev(a[0]));
  return leaf(u);
}

std::string text(Lab& lab, const SQ& q) { return rr::out::Printer::plain(lab.session().printer().sq(q)); }

std::map<std::string, mpq_class> random_point(std::mt19937_64& rng, const std::vector<std::string>& vars, int lo,
                                              int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::map<std::string, mpq_class> env;
  for (auto& v : vars) env[v] = d(rng);
  return env;
}

ExactLeaf env_leaf(const std::map<std::string, mpq_class>& env) {
  return [env](const Value& u) -> std::optional<mpq_class> {
    if (!u.is_symbol() || !u.symbol_ptr()) return std::nullopt;
    auto it = env.find(u.symbol_ptr()->name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
}

Value ExprGen::poly(int depth) {
  if (depth >= max_depth || pick(0, 2) == 0) {
    if (pick(0, 9) < 6) return sym(vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))]);
    return Value::fixnum(pick(-max_const, max_const));
  }
  switch (pick(0, 5)) {
    case 0:
      return list(sym("PLUS"), poly(depth + 1), poly(depth + 1), poly(depth + 1));
    case 1:
      return list(sym("PLUS"), poly(depth + 1), poly(depth + 1));
    case 2:
      return list(sym("TIMES"), poly(depth + 1), poly(depth + 1));
    case 3:
      return list(sym("DIFFERENCE"), poly(depth + 1), poly(depth + 1));
    case 4:
      return list(sym("MINUS"), poly(depth + 1));
    default:
      return list(sym("EXPT"), poly(depth + 2), Value::fixnum(pick(1, 3)));
  }
}

Value ExprGen::rewrite(const Value& u, int depth) {
  if (!u.is_pair()) {
    switch (pick(0, 5)) {
      case 0:
        return list(sym("PLUS"), u, Value::fixnum(0));
      case 1:
        return list(sym("TIMES"), Value::fixnum(1), u);
      case 2: {
        Value v = poly(max_depth - 1);
        return list(sym("DIFFERENCE"), list(sym("PLUS"), u, v), v);
      }
      default:
        return u;
    }
  }
  std::string h = car(u).symbol_ptr()->name;
  auto a = args_of(u);
  if (h == "EXPT") {
    Value b = rewrite(a[0], depth + 1);
    std::int64_t n = a[1].fixnum_value();
    if (pick(0, 1) == 0) return list(sym("EXPT"), b, a[1]);
    if (n == 0) return Value::fixnum(1);
    std::vector<Value> copies(static_cast<std::size_t>(n), b);
    if (n == 1) return b;
    copies.insert(copies.begin(), sym("TIMES"));
    return rr::lisp::list_from(copies);
  }
  for (auto& x : a) x = rewrite(x, depth + 1);
  if (h == "DIFFERENCE") return list(sym("PLUS"), a[0], list(sym("TIMES"), Value::fixnum(-1), a[1]));
  if (h == "MINUS") return list(sym("TIMES"), Value::fixnum(-1), a[0]);
  std::shuffle(a.begin(), a.end(), rng);
  if (h == "TIMES" && a.size() == 2 && depth <= 2 && head_is(a[1], "PLUS")) {
    std::vector<Value> terms{sym("PLUS")};
    for (auto& t : args_of(a[1])) terms.push_back(list(sym("TIMES"), a[0], t));
    return rr::lisp::list_from(terms);
  }
  a.insert(a.begin(), car(u));
  return rr::lisp::list_from(a);
}

// A polynomial that is nonzero at some integer point, so not identically zero.
Value ExprGen::nonzero_poly(int depth) {
  for (;;) {
    Value q = poly(depth);
    auto v = eval_exact(q, env_leaf(random_point(rng, vars, -9, 9)));
    if (v && *v != 0) return q;
  }
}

Value ExprGen::rational(int depth) {
  Value p = poly(depth), q = nonzero_poly(depth);
  if (pick(0, 1) == 0) {
    Value c = nonzero_poly(depth + 1);
    p = list(sym("TIMES"), p, c);
    q = list(sym("TIMES"), q, c);
  }
  return list(sym("QUOTIENT"), p, q);
}

Value ExprGen::transcendental(const std::string& var, int depth) {
  Value x = sym(var);
  if (depth >= max_depth || pick(0, 2) == 0) {
    switch (pick(0, 6)) {
      case 0:
        return Value::fixnum(pick(-max_const, max_const));
      case 1:
        return list(sym("SIN"), x);
      case 2:
        return list(sym("COS"), list(sym("TIMES"), Value::fixnum(pick(1, 3)), x));
      case 3:
        return list(sym("EXPT"), sym("E"), x);
      case 4:
        return list(sym("FF"), x);
      case 5:
        return sym(vars.empty() ? "Y" : vars[0]);
      default:
        return x;
    }
  }
  switch (pick(0, 4)) {
    case 0:
      return list(sym("PLUS"), transcendental(var, depth + 1), transcendental(var, depth + 1));
    case 1:
    case 2:
      return list(sym("TIMES"), transcendental(var, depth + 1), transcendental(var, depth + 1));
    case 3:
      return list(sym("EXPT"), transcendental(var, depth + 2), Value::fixnum(pick(2, 3)));
    default:
      return list(sym("SIN"), transcendental(var, depth + 2));
  }
}

std::string random_digits(std::mt19937_64& rng, int max_digits) {
  std::uniform_int_distribution<int> len(1, max_digits), dig(0, 9), coin(0, 1);
  int n = len(rng);
  std::string s = coin(rng) ? "-" : "";
  s += static_cast<char>('1' + dig(rng) % 9);
  for (int i = 1; i < n; ++i) s += static_cast<char>('0' + dig(rng));
  return s;
}

}  // namespace kit
