#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "alg/sf.hpp"

namespace rr::alg {

using lisp::Symbol;

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<SQ> e;  // row-major

  SQ& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  const SQ& at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }
};

// Algebraic values as seen by Lisp code. Integers travel as plain Lisp
// integers; everything else is boxed. A box remembers the simplification
// epoch it was computed in and is re-simplified when the epoch moves on.
struct SqBox final : lisp::Opaque {
  SqBox(SQ s, std::uint64_t e) : sq(std::move(s)), epoch(e) {}
  std::string describe() const override { return "SQ"; }
  SQ sq;
  std::uint64_t epoch;
};

struct MatBox final : lisp::Opaque {
  MatBox(Matrix mm, std::uint64_t e) : m(std::move(mm)), epoch(e) {}
  std::string describe() const override { return "MATRIX " + std::to_string(m.rows) + "x" + std::to_string(m.cols); }
  Matrix m;
  std::uint64_t epoch;
};

// One LET rule. A rule with a single factor of power one is consulted when a
// kernel is formed; all others are matched against expanded terms after
// multiplication.
struct Rule {
  std::vector<Symbol*> vars;
  std::vector<std::pair<Value, int>> factors;
  Value rhs;
  Value key;  // lhs with quantified variables renamed, used by CLEAR
};

struct Switches {
  bool exp = true;
  bool list = false;
  bool div = false;
  bool nero = false;
};

struct ArrayValue {
  std::vector<int> bounds;  // inclusive upper bounds
  std::vector<Value> data;
};

// Raises a LispError with the given message.
[[noreturn]] void alg_error(const std::string& msg);

struct MatrixSlot {
  std::optional<Matrix> value;
  std::uint64_t epoch = 0;
};

class Algebra {
 public:
  explicit Algebra(lisp::Interp& in);
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  lisp::Interp& in;
  Ring ring;
  Switches sw;

  // ---- kernels
  Kernel* kernel(const Value& prefix);
  Kernel* find_kernel(const Value& prefix) const;
  SQ kernel_sq(Kernel* k) { return SQ{SF::power(k, 1), SF::fix(1)}; }
  void order(const std::vector<Value>& items);
  std::size_t kernel_count() const { return kernels_.size(); }

  // Bumped whenever something that simplification depends on changes.
  std::uint64_t epoch() const noexcept { return epoch_; }
  void invalidate() noexcept { ++epoch_; }

  // ---- simplification
  SQ simp(const Value& u);
  Value prepsq(const SQ& q);
  Value prepf(const SF& f);
  // One monomial as prefix, with its sign reported separately.
  Value prepterm(const Monomial& m, bool& negative);
  Value reval(const Value& u) { return prepsq(simp(u)); }
  SQ value_sq(const Value& v);
  Value make_value(const SQ& q);
  bool boolean(const Value& u);
  // Integer value of an expression, or an error naming `what`.
  std::int64_t integer(const Value& u, const char* what);
  std::optional<Value> as_integer(const SQ& q);

  // Top-level evaluation: matrix-valued expressions yield a MatBox.
  Value aeval(const Value& u);
  bool is_matrix_expr(const Value& u);
  Matrix mat_eval(const Value& u);
  Matrix matrix_value(const Value& v);

  // ---- differentiation
  SQ diffsq(const SQ& q, Kernel* x);
  bool depends(const Value& prefix, const Value& var);

  // ---- rules
  void let(const std::vector<Symbol*>& vars, const Value& lhs, const Value& rhs);
  void clear_rule(const std::vector<Symbol*>& vars, const Value& lhs);
  bool has_product_rules() const noexcept { return !product_rules_.empty(); }
  SQ subs2(const SQ& q);
  std::size_t rule_count() const { return kernel_rules_.size() + product_rules_.size(); }

  // ---- declarations and storage
  void declare_operator(Symbol* s);
  bool is_operator(Symbol* s) const { return operators_.count(s) != 0; }
  void declare_array(Symbol* s, std::vector<int> bounds);
  ArrayValue* array(Symbol* s);
  void declare_matrix(Symbol* s);
  MatrixSlot* matrix(Symbol* s);
  void clear_symbol(Symbol* s);
  void set_global(Symbol* s, Value v);
  const Value* global(Symbol* s) const;

  // Assignment with evaluated target; returns the assigned value.
  Value assign(const Value& target, const Value& rhs_prefix);
  // Targets assigned so far (evaluated prefix form), for echo and WRITE.
  std::vector<Value>& assign_log() { return assign_log_; }

  // ---- output state
  std::vector<Symbol*> factors;
  bool is_factored(const Kernel* k) const;

  // Frequently used symbols.
  struct Names {
    Symbol *plus, *times, *minus, *difference, *quotient, *expt, *df, *sin, *cos, *e, *det, *mat, *setq, *if_,
        *for_, *sum, *product, *equal, *neq, *lessp, *greaterp, *leq, *geq, *and_, *or_, *not_, *proctype, *ans,
        *recip, *tuple;
  };
  const Names& names() const noexcept { return n_; }

  // Hook used to call user procedures from simp; set by the session layer.
  std::function<Value(Symbol*, std::vector<Value>&)> call_procedure;
  bool is_procedure(Symbol* s) const;

  // Integer loop shared by FOR ... SUM/PRODUCT and FOR ... DO. Start and
  // step are fixed on entry, the limit is re-evaluated each time round.
  template <class F>
  void for_loop(Symbol* var, const Value& start, const Value& step, const Value& finish, F&& body) {
    std::int64_t i = integer(start, "FOR start");
    std::int64_t st = step.is_nil() ? 1 : integer(step, "FOR step");
    if (st == 0) alg_error("FOR step is zero");
    lisp::BindGuard g;
    g.bind(var, Value::fixnum(i));
    for (;;) {
      var->value = Value::fixnum(i);
      std::int64_t f = integer(finish, "FOR limit");
      if (st > 0 ? i > f : i < f) break;
      body();
      i += st;
    }
  }

  int firings() const noexcept { return firings_; }
  static constexpr int kMaxFirings = 2048;

 private:
  friend class SimpDepth;

  SQ simp_symbol(Symbol* s, const Value& u);
  SQ simp_pair(const Value& u);
  SQ simp_operator(Symbol* head, const Value& u);
  SQ simp_kernel_form(const Value& prefix);
  SQ simp_expt(const Value& u);
  SQ simp_df(const Value& u);
  SQ simp_trig(Symbol* head, const Value& u);
  SQ simp_for(const Value& u);
  SQ simp_array_ref(ArrayValue& a, Symbol* name, const Value& u);
  SQ simp_procedure_call(Symbol* head, const Value& u);
  SQ simp_times(const SQ& a, const SQ& b);

  Value kernel_power(Kernel* k, int d);

  SQ diff_sf(const SF& f, Kernel* x);
  SQ diff_kernel(Kernel* k, Kernel* x);
  SQ df_kernel(const Value& base, std::vector<std::pair<Value, int>> vars, Kernel* x);

  std::optional<SQ> try_kernel_rules(const Value& prefix);
  bool match(const Value& pat, const Value& subject, const std::vector<Symbol*>& vars,
             std::vector<std::pair<Symbol*, Value>>& binding);
  bool match_monomial(const Rule& r, const Monomial& m, std::vector<std::pair<Symbol*, Value>>& binding,
                      std::vector<int>& used);
  Value substitute(const Value& form, const std::vector<std::pair<Symbol*, Value>>& binding);
  Value rule_key(const std::vector<Symbol*>& vars, const Value& lhs);
  Value rule_template(const std::vector<Symbol*>& vars, const Value& u);
  Rule make_rule(const std::vector<Symbol*>& vars, const Value& lhs);
  SQ subs2f(const SF& f);
  void note_firing(const Rule& r);

  std::size_t array_offset(const ArrayValue& a, Symbol* name, const std::vector<std::int64_t>& idx);
  std::vector<std::int64_t> eval_indices(const Value& args);

  Matrix mat_mul(const Matrix& a, const Matrix& b);
  Matrix mat_add(const Matrix& a, const Matrix& b);
  Matrix mat_scale(const Matrix& a, const SQ& s);
  Matrix mat_inverse(const Matrix& a);
  Matrix mat_pow(const Matrix& a, std::int64_t n);
  Matrix mat_literal(const Value& u);
  void refresh(Matrix& m);

 public:
  SQ det(const Matrix& m);

 private:
  std::unordered_map<Value, std::unique_ptr<Kernel>, lisp::StructuralHash, lisp::StructuralEqual> kernels_;
  std::int64_t next_order_ = 0;
  std::int64_t next_forced_order_ = std::int64_t{-1} << 40;
  std::uint32_t next_id_ = 0;
  std::uint64_t epoch_ = 1;

  std::unordered_map<Symbol*, Value> globals_;
  std::unordered_set<Symbol*> operators_;
  std::unordered_map<Symbol*, ArrayValue> arrays_;
  std::unordered_map<Symbol*, MatrixSlot> matrices_;
  std::vector<Rule> kernel_rules_;
  std::vector<Rule> product_rules_;
  std::vector<Value> assign_log_;

  struct PairHash {
    std::size_t operator()(const std::pair<const Kernel*, const Kernel*>& p) const noexcept {
      return std::hash<const void*>()(p.first) * 31 + std::hash<const void*>()(p.second);
    }
  };
  std::unordered_map<std::pair<const Kernel*, const Kernel*>, SQ, PairHash> dcache_;  // kernel derivatives
  std::uint64_t depoch_ = 0;
  int simp_depth_ = 0;
  int firings_ = 0;
  Names n_{};
};

}  // namespace rr::alg
