#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lisp/symbol.hpp"
#include "lisp/value.hpp"

namespace rr::lisp {

// Non-local transfers used by PROG. They are not LispErrors: a GO or RETURN
// that reaches ERRORSET is reported as a stray transfer.
struct GoSignal {
  Symbol* label;
};
struct ReturnSignal {
  Value value;
};

struct InterpConfig {
  std::size_t storage_limit = std::size_t{64} << 20;
  int max_depth = 20000;
};

// The interpreter-only Lisp kernel. Lisp-2: value and function cells are
// separate, locals are shallow-bound into value cells and restored on exit.
// Arithmetic is native on fixnums; anything involving a bignum is delegated
// to the prelude's digit-list routines by name.
class Interp {
 public:
  explicit Interp(InterpConfig cfg = {});
  ~Interp();
  Interp(const Interp&) = delete;
  Interp& operator=(const Interp&) = delete;

  // Charges allocations on this thread to this interpreter while alive.
  class Activation {
   public:
    explicit Activation(Interp& in) noexcept;
    ~Activation();
    Activation(const Activation&) = delete;
    Activation& operator=(const Activation&) = delete;

   private:
    HeapStats* saved_;
  };

  Symbol* intern(std::string_view name);
  Value sym(std::string_view name) { return value_of(intern(name)); }
  Value value_of(Symbol* s) const noexcept { return s == &nil_ ? Value() : Value::symbol(s); }
  // Symbol record for a symbol value, including NIL.
  Symbol& symbol_of(const Value& v);
  Symbol* nil_symbol() noexcept { return &nil_; }
  const Value& t() const noexcept { return t_value_; }
  Value truth(bool b) const { return b ? t_value_ : Value(); }

  Value eval(const Value& form);
  Value apply(const Value& fn, std::span<const Value> args);
  Value call(std::string_view fname, std::span<const Value> args);
  Value call(Symbol* fn, std::span<const Value> args);

  struct Outcome {
    bool ok = false;
    bool storage = false;  // failed because the storage budget ran out
    Value value;
    std::string message;
  };
  // Evaluates form, trapping every Lisp-level failure. Bindings and PROG
  // state are unwound on failure.
  Outcome errorset(const Value& form);

  void defbuiltin(std::string_view name, BuiltinFn fn, int min_args, int max_args);
  void defspecial(std::string_view name, SpecialFn fn);
  // (DE name params . body)
  void define_expr(Symbol* name, const Value& params, const Value& body);

  Value get(const Value& s, const Value& key);
  void put(const Value& s, const Value& key, Value v);
  void remprop(const Value& s, const Value& key);
  bool flagp(const Value& s, const Value& key);

  // Kernel arithmetic (fixnum fast path, prelude handoff otherwise).
  Value plus2(const Value& a, const Value& b);
  Value difference(const Value& a, const Value& b);
  Value times2(const Value& a, const Value& b);
  Value quotient(const Value& a, const Value& b);
  Value remainder(const Value& a, const Value& b);
  Value minus(const Value& a);
  bool lessp(const Value& a, const Value& b);
  bool greaterp(const Value& a, const Value& b) { return lessp(b, a); }
  int sign(const Value& a);

  // Canonical integer from sign and a least-significant-first digit list.
  Value make_integer(int sign, const Value& digits);

  Value explode(const Value& atom);
  Value compress(const Value& chars);
  bool liter(const Value& x);

  // Printed representations.
  std::string prin1_string(const Value& v);
  std::string princ_string(const Value& v);

  using Sink = std::function<void(std::string_view)>;
  void set_output(Sink s) { out_ = std::move(s); }
  void set_error_output(Sink s) { err_ = std::move(s); }
  void write(std::string_view text);
  void diagnostic(std::string_view message);
  int column() const noexcept { return column_; }

  // Reads and evaluates every form in a source text in order.
  void load_source(std::string_view text, std::string_view origin);

  HeapStats& heap() noexcept { return *heap_; }
  const InterpConfig& config() const noexcept { return cfg_; }

  // Opaque per-instance attachment (the algebra layer lives here).
  void set_extension(std::shared_ptr<void> ext) { extension_ = std::move(ext); }

  std::uint64_t next_gensym() noexcept { return ++gensym_counter_; }

  // Frequently used symbols.
  struct Names {
    Symbol *quote, *lambda, *function, *go, *ret, *cond, *progn, *t, *ok, *err;
    Symbol *bigadd, *bigdifference, *bigtimes, *bigquotient, *bigremainder, *biglessp;
  };
  const Names& names() const noexcept { return names_; }

 private:
  friend class BindGuard;
  friend class EvalDepth;

  Value eval_pair(const Value& form);
  Value apply_symbol(Symbol* f, std::span<const Value> args);
  Value apply_lambda(const Value& lambda, std::span<const Value> args, std::string_view who);
  Value progn(const Value& body);
  Value prog(const Value& args);

  enum class Flow { Normal, Go, Return };
  Flow exec(const Value& stmt, Value& result, Symbol*& label);
  Flow exec_sequence(const Value& body, Value& result, Symbol*& label);

  Value big_call(Symbol* fn, const Value& a, const Value& b);
  void install_kernel();

  InterpConfig cfg_;
  std::unique_ptr<HeapStats> heap_;
  std::unordered_map<std::string, std::unique_ptr<Symbol>> obarray_;
  Symbol nil_{"NIL"};
  Value t_value_;
  Names names_{};
  std::vector<const std::vector<Symbol*>*> prog_labels_;
  int depth_ = 0;
  Sink out_;
  Sink err_;
  int column_ = 0;
  std::uint64_t gensym_counter_ = 0;
  std::shared_ptr<void> extension_;
};

// Saves a symbol's value cell and restores it on scope exit.
class BindGuard {
 public:
  BindGuard() = default;
  BindGuard(const BindGuard&) = delete;
  BindGuard& operator=(const BindGuard&) = delete;
  ~BindGuard();
  void bind(Symbol* s, Value v);

 private:
  struct Saved {
    Symbol* sym;
    Value value;
    bool bound;
  };
  std::vector<Saved> saved_;
};

// Reader over an in-memory character stream.
class Reader {
 public:
  Reader(Interp& in, std::string_view text, int first_line = 1);
  // False at clean end of input. Throws IncompleteInput when input ends
  // inside a datum and LispError for malformed input.
  bool next(Value& out);
  int line() const noexcept { return line_; }

 private:
  enum class Tok { End, Open, Close, OpenV, CloseV, Dot, Quote, Atom, Str };
  Tok scan(std::string& text, bool& escaped);
  Value read_datum(Tok t, std::string& text, bool escaped);
  Value atom_from(const std::string& text, bool escaped);
  int peek() const { return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1; }

  Interp& in_;
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_;
};

// Reads exactly one datum from text (trailing whitespace allowed).
Value read_one(Interp& in, std::string_view text);

// Parses a decimal integer literal into a canonical fixnum or bignum.
Value parse_integer(Interp& in, std::string_view digits);
bool looks_like_integer(std::string_view text);

}  // namespace rr::lisp
