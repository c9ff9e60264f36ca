#pragma once
// Shared helpers for the unit tests and the acceptance driver.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "alg/algebra.hpp"
#include "session/session.hpp"

namespace kit {

using rr::alg::SQ;
using rr::lisp::Value;

std::string corpus_path(const std::string& name);
std::string read_text(const std::string& path);
// Text of corpus/alg.tst from the first `from` up to (not including) `to`.
std::string corpus_slice(const std::string& from, const std::string& to);

// A session whose transcript and diagnostics are captured. Direct calls into
// the algebra layer are charged to this session while the Lab is alive, so
// Labs must be destroyed in reverse order of creation.
class Lab {
 public:
  explicit Lab(int width = 80, std::size_t storage = std::size_t{256} << 20);
  ~Lab();

  int run(const std::string& src);  // number of failed statements
  Value parse(const std::string& expr);
  Value read(const std::string& lisp_text);
  SQ simp(const std::string& expr) { return simp(parse(expr)); }
  SQ simp(const Value& prefix);
  bool zero(const std::string& expr) { return simp(expr).num.is_zero(); }
  bool same(const std::string& a, const std::string& b) { return session().equivalent(a, b); }
  std::string show(const std::string& expr) { return session().simplify(expr); }
  Value sym(const std::string& name) { return in().sym(name); }

  rr::Session& session() { return *s_; }
  rr::lisp::Interp& in() { return s_->interp(); }
  rr::alg::Algebra& alg() { return s_->algebra(); }

  std::string out;
  std::string err;

 private:
  std::unique_ptr<rr::Session> s_;
  std::unique_ptr<rr::lisp::Interp::Activation> act_;
};

// Lisp integers <-> GMP.
mpz_class to_mpz(const Value& v);
Value from_mpz(rr::lisp::Interp& in, const mpz_class& z);

// Evaluates an algebraic prefix form. Leaves (symbols and kernel forms the
// evaluator does not know) are resolved by the callback; nullopt from the
// callback or a zero divisor makes the whole result nullopt.
using ExactLeaf = std::function<std::optional<mpq_class>(const Value&)>;
std::optional<mpq_class> eval_exact(const Value& u, const ExactLeaf& leaf);

// Floating evaluation; SIN, COS and E**x are evaluated directly, other
// leaves go to the callback.
using FloatLeaf = std::function<long double(const Value&)>;
long double eval_float(const Value& u, const FloatLeaf& leaf);

// Prefix text for SQs, via the session's printer.
std::string text(Lab& lab, const SQ& q);

// Random integer environment over the given variable names.
std::map<std::string, mpq_class> random_point(std::mt19937_64& rng, const std::vector<std::string>& vars, int lo,
                                              int hi);
ExactLeaf env_leaf(const std::map<std::string, mpq_class>& env);

// Random polynomial expressions as prefix forms.
struct ExprGen {
  std::mt19937_64& rng;
  rr::lisp::Interp& in;
  std::vector<std::string> vars;
  int max_depth = 4;
  int max_const = 5;

  Value poly(int depth);
  // Same value, different shape: commuted operands, expanded powers,
  // distributed products, inserted cancelling terms.
  Value rewrite(const Value& u, int depth = 0);
  // Rational function with a denominator that is not identically zero.
  Value rational(int depth);
  Value nonzero_poly(int depth);
  // Expression with transcendental kernels of one variable.
  Value transcendental(const std::string& var, int depth);

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Value sym(const std::string& n) { return in.sym(n); }
};

std::string random_digits(std::mt19937_64& rng, int max_digits);

}  // namespace kit
