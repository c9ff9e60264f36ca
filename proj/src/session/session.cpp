#include "session/session.hpp"

#include <algorithm>
#include <cstdio>

#include "lisp/prelude.hpp"
#include "rlisp/lexer.hpp"
#include "rlisp/parser.hpp"
#include "rlisp/translate.hpp"

namespace rr {

using lisp::car;
using lisp::cdr;
using lisp::Symbol;
using lisp::Value;

namespace {

bool is_statement_tree(const Value& t) {
  Symbol* h = t.is_pair() ? car(t).symbol_ptr() : nullptr;
  if (h == nullptr) return false;
  const std::string& n = h->name;
  return n.size() > 2 && n.front() == '*' && n.back() == '*' && n != "*ROW*";
}

bool head_is(const Value& t, const Symbol* s) { return t.is_pair() && car(t).symbol_ptr() == s; }

// Number of targets in a := b := ... chain.
std::size_t chain_length(const Value& t, const Symbol* setq) {
  std::size_t n = 0;
  for (Value u = t; head_is(u, setq); u = car(cdr(cdr(u)))) ++n;
  return n;
}

bool is_zero(const Value& v) { return v.is_nil() || (v.is_fixnum() && v.fixnum_value() == 0); }

alg::MatBox* as_matrix(const Value& v) {
  return v.is_opaque() ? dynamic_cast<alg::MatBox*>(&v.as<lisp::Opaque>()) : nullptr;
}

}  // namespace

Session::Session(const SessionConfig& cfg) : cfg_(cfg) {
  lisp::InterpConfig ic;
  ic.storage_limit = cfg.storage_limit;
  in_ = std::make_unique<lisp::Interp>(ic);
  lisp::Interp::Activation act(*in_);
  set_output([](std::string_view s) { std::fwrite(s.data(), 1, s.size(), stdout); });
  set_error_output([](std::string_view s) {
    std::fflush(stdout);
    std::fwrite(s.data(), 1, s.size(), stderr);
  });
  if (cfg.prelude_manifest.empty())
    lisp::load_prelude(*in_, lisp::builtin_prelude());
  else
    lisp::load_prelude(*in_, lisp::read_prelude_manifest(cfg.prelude_manifest));
  alg_ = std::make_unique<alg::Algebra>(*in_);
  pr_ = std::make_unique<out::Printer>(*alg_);
  pr_->width = std::max(16, cfg.width);
  alg_->call_procedure = [this](Symbol* f, std::vector<Value>& args) { return in_->call(f, args); };
  install();
  wall_anchor_ = std::chrono::steady_clock::now();
  cpu_anchor_ = std::clock();
}

Session::~Session() {
  lisp::Interp::Activation act(*in_);
  pr_.reset();
  alg_.reset();
}

void Session::set_output(Sink s) { in_->set_output(std::move(s)); }

void Session::set_error_output(Sink s) {
  err_ = s;
  in_->set_error_output(std::move(s));
}

void Session::report(int line, const std::string& msg) { err_("***** line " + std::to_string(line) + ": " + msg + "\n"); }

// ---- Lisp entry points used by translated code -----------------------------

void Session::install() {
  lisp::Interp& in = *in_;
  alg::Algebra& a = *alg_;
  in.defbuiltin("AEVAL", [&a](lisp::Interp&, std::span<const Value> args) { return a.aeval(args[0]); }, 1, 1);
  in.defbuiltin(
      "ALG-BOOL", [&a](lisp::Interp& in, std::span<const Value> args) { return in.truth(a.boolean(args[0])); }, 1, 1);
  in.defbuiltin("ALG-EXEC", [this](lisp::Interp&, std::span<const Value> args) { return exec(args[0]); }, 1, 1);
  // (ALG-FOR-DO v start step finish body)
  in.defspecial("ALG-FOR-DO", [&a](lisp::Interp& in, const Value& args) {
    Symbol* v = car(args).symbol_ptr();
    const Value& body = car(cdr(cdr(cdr(cdr(args)))));
    a.for_loop(v, car(cdr(args)), car(cdr(cdr(args))), car(cdr(cdr(cdr(args)))), [&] { in.eval(body); });
    return Value();
  });
  in.defspecial("ALG-WRITE", [this](lisp::Interp&, const Value& args) { return write_items(args); });
  // (ALG-PROCEDURE name type params body)
  in.defspecial("ALG-PROCEDURE", [&a](lisp::Interp& in, const Value& args) {
    Symbol* f = car(args).symbol_ptr();
    if (f == nullptr) throw lisp::LispError("bad procedure name");
    in.define_expr(f, car(cdr(cdr(args))), lisp::list(car(cdr(cdr(cdr(args))))));
    f->put_prop(a.names().proctype, car(cdr(args)));
    a.invalidate();
    return car(args);
  });
}

Value Session::exec(const Value& stmt) {
  alg::Algebra& a = *alg_;
  const std::string& n = car(stmt).symbol_ptr()->name;
  const Value& args = cdr(stmt);
  auto symbol_items = [&](const Value& l, const char* what) {
    std::vector<Symbol*> out;
    for (Value p = l; p.is_pair(); p = cdr(p)) {
      if (car(p).symbol_ptr() == nullptr) throw lisp::LispError(std::string(what) + " expects identifiers");
      out.push_back(car(p).symbol_ptr());
    }
    return out;
  };
  if (n == "*ARRAY*") {
    for (Value p = args; p.is_pair(); p = cdr(p)) {
      const Value& d = car(p);
      if (!d.is_pair()) throw lisp::LispError("array " + in_->prin1_string(d) + " declared without bounds");
      std::vector<int> bounds;
      for (Value b = cdr(d); b.is_pair(); b = cdr(b)) {
        std::int64_t k = a.integer(car(b), "array bound");
        if (k < 0 || k > 1000000) throw lisp::LispError("array bound out of range: " + std::to_string(k));
        bounds.push_back(static_cast<int>(k));
      }
      a.declare_array(car(d).symbol_ptr(), bounds);
    }
  } else if (n == "*MATRIX*") {
    for (Value p = args; p.is_pair(); p = cdr(p)) {
      const Value& d = car(p);
      if (!d.is_pair()) {
        a.declare_matrix(d.symbol_ptr());
        continue;
      }
      if (lisp::list_length(cdr(d)) != 2) throw lisp::LispError("matrix dimensions must be rows, columns");
      std::int64_t r = a.integer(car(cdr(d)), "matrix rows");
      std::int64_t c = a.integer(car(cdr(cdr(d))), "matrix columns");
      if (r < 1 || c < 1 || r * c > 1000000) throw lisp::LispError("bad matrix dimensions");
      a.declare_matrix(car(d).symbol_ptr());
      alg::Matrix m;
      m.rows = static_cast<int>(r);
      m.cols = static_cast<int>(c);
      m.e.assign(static_cast<std::size_t>(r * c), alg::SQ{});
      a.matrix(car(d).symbol_ptr())->value = m;
      a.matrix(car(d).symbol_ptr())->epoch = a.epoch();
    }
  } else if (n == "*OPERATOR*") {
    for (Symbol* s : symbol_items(args, "OPERATOR")) a.declare_operator(s);
  } else if (n == "*SCALAR*") {
    // Top-level scalars need no declaration.
  } else if (n == "*ON*" || n == "*OFF*") {
    bool on = n == "*ON*";
    for (Symbol* s : symbol_items(args, "ON/OFF")) {
      const std::string& w = s->name;
      if (w == "EXP") {
        // Expansion is always done; see the README.
        a.sw.exp = on;
      } else if (w == "LIST") {
        a.sw.list = on;
      } else if (w == "DIV") {
        a.sw.div = on;
      } else if (w == "NERO") {
        a.sw.nero = on;
      } else if (w == "MCD") {
        a.ring.mcd = on;
        a.invalidate();
      } else {
        throw lisp::LispError("unknown switch " + w);
      }
    }
  } else if (n == "*FACTOR*") {
    for (Symbol* s : symbol_items(args, "FACTOR"))
      if (std::find(a.factors.begin(), a.factors.end(), s) == a.factors.end()) a.factors.push_back(s);
  } else if (n == "*REMFAC*") {
    for (Symbol* s : symbol_items(args, "REMFAC")) std::erase(a.factors, s);
  } else if (n == "*ORDER*") {
    a.order(lisp::list_to_vector(args));
  } else if (n == "*LET*" || n == "*CLEAR*") {
    std::vector<Symbol*> vars = symbol_items(car(args), "FOR ALL");
    for (Value p = cdr(args); p.is_pair(); p = cdr(p)) {
      if (n == "*LET*")
        a.let(vars, car(car(p)), car(cdr(car(p))));
      else if (vars.empty() && car(p).symbol_ptr() != nullptr)
        a.clear_symbol(car(p).symbol_ptr());
      else
        a.clear_rule(vars, car(p));
    }
  } else if (n == "*SHOWTIME*") {
    showtime();
  } else if (n == "*UNSUPPORTED*") {
    throw lisp::LispError("unsupported package: " + car(args).symbol_ptr()->name +
                          " belongs to the high energy physics package, which is not available");
  } else {
    throw lisp::LispError("cannot execute " + n);
  }
  return Value();
}

void Session::showtime() {
  auto now = std::chrono::steady_clock::now();
  std::clock_t cpu = std::clock();
  auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(now - wall_anchor_).count();
  auto eval = static_cast<long long>((cpu - cpu_anchor_) * 1000.0 / CLOCKS_PER_SEC);
  in_->write("TIME: " + std::to_string(eval) + " MS  WALL: " + std::to_string(wall) + " MS\n");
  wall_anchor_ = now;
  cpu_anchor_ = cpu;
}

// ---- output ------------------------------------------------------------------

void Session::print_lines(const std::string& marked) {
  for (const auto& l : pr_->layout(marked)) in_->write(l + "\n");
}

std::string Session::value_text(const Value& v) {
  if (v.is_string()) return v.as<lisp::String>().text;
  if (as_matrix(v) != nullptr) {
    alg::Matrix mm = alg_->matrix_value(v);
    std::string s = "MAT(";
    for (int i = 0; i < mm.rows; ++i) {
      s += i ? ",(" : "(";
      for (int j = 0; j < mm.cols; ++j) s += (j ? "," : "") + pr_->sq(mm.at(i, j));
      s += ")";
    }
    return s + ")";
  }
  if (v.is_integer() || v.is_nil() || v.is_opaque() || v.is_symbol() || v.is_pair()) return pr_->sq(alg_->value_sq(v));
  return in_->prin1_string(v);
}

void Session::print_matrix(const std::string& name, const alg::Matrix& m) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const alg::SQ& e = m.at(i, j);
      if (alg_->sw.nero && e.num.is_zero()) continue;
      print_lines(name + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") := " + pr_->sq(e));
    }
}

// The last k targets in the assignment log, outermost first.
std::string Session::assignment_prefix(std::size_t k) {
  auto& log = alg_->assign_log();
  k = std::min(k, log.size());
  std::string s;
  for (std::size_t i = 0; i < k; ++i) s += pr_->prefix(log[log.size() - 1 - i]) + " := ";
  return s;
}

Value Session::write_items(const Value& items) {
  alg::Algebra& a = *alg_;
  std::string line;
  bool suppressed = false;
  for (Value p = items; p.is_pair(); p = cdr(p)) {
    const Value& it = car(p);
    if (it.is_string()) {
      line += it.as<lisp::String>().text;
      continue;
    }
    Value v = a.aeval(it);
    if (head_is(it, a.names().setq)) {
      if (a.sw.nero && is_zero(v)) {
        suppressed = true;
        continue;
      }
      line += assignment_prefix(chain_length(it, a.names().setq));
    }
    line += value_text(v);
  }
  a.assign_log().clear();
  if (!(line.empty() && suppressed)) print_lines(line);
  return Value();
}

void Session::print_result(const Value& tree, const Value& value) {
  alg::Algebra& a = *alg_;
  if (head_is(tree, a.names().setq)) {
    std::size_t k = chain_length(tree, a.names().setq);
    if (as_matrix(value) != nullptr) {
      auto& log = a.assign_log();
      std::string name = log.empty() ? "MAT" : out::Printer::plain(pr_->prefix(log.back()));
      print_matrix(name, a.matrix_value(value));
      return;
    }
    if (a.sw.nero && is_zero(value)) return;
    print_lines(assignment_prefix(k) + value_text(value));
    return;
  }
  if (as_matrix(value) != nullptr) {
    print_matrix("MAT", a.matrix_value(value));
    return;
  }
  print_lines(value_text(value));
}

// ---- running -------------------------------------------------------------------

bool Session::execute(const Value& tree, bool echo, std::string_view text, int line) {
  alg::Algebra& a = *alg_;
  a.assign_log().clear();
  Value form = rlisp::translate(*in_, tree);
  if (echo && cfg_.echo) in_->write(std::string(text) + "\n");
  lisp::Interp::Outcome r;
  try {
    r = in_->errorset(form);
    if (r.ok && !is_statement_tree(tree)) {
      a.set_global(a.names().ans, r.value);
      if (echo) print_result(tree, r.value);
    }
  } catch (const lisp::LispError& e) {
    r.ok = false;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.ok = false;
    r.message = std::string("internal error: ") + e.what();
  }
  a.assign_log().clear();
  if (!r.ok) report(line, r.message);
  if (echo && cfg_.echo) in_->write("\n");
  return r.ok;
}

int Session::run(std::string_view src, int first_line, std::size_t* consumed, bool* incomplete) {
  rlisp::Parser p(*in_, src, first_line);
  rlisp::Statement st;
  int errors = 0;
  for (;;) {
    try {
      if (!p.next(st)) break;
    } catch (const rlisp::ParseError& e) {
      if (incomplete != nullptr && e.incomplete) {
        *incomplete = true;
        return errors;
      }
      report(e.line, e.what());
      ++errors;
      p.recover();
      if (consumed != nullptr) *consumed = p.consumed();
      continue;
    }
    if (consumed != nullptr) *consumed = st.end;
    if (head_is(st.tree, in_->intern("*END*"))) {
      ended_ = true;
      break;
    }
    if (!execute(st.tree, st.echo, src.substr(st.begin, st.end - st.begin), st.line)) ++errors;
  }
  if (consumed != nullptr) *consumed = src.size();
  return errors;
}

int Session::run_source(std::string_view src) {
  lisp::Interp::Activation act(*in_);
  return run(src, 1, nullptr, nullptr);
}

bool Session::feed(std::string_view text, int& errors) {
  lisp::Interp::Activation act(*in_);
  buffer_ += text;
  if (buffer_.empty() || buffer_.back() != '\n') buffer_ += '\n';
  std::size_t consumed = 0;
  bool incomplete = false;
  errors = run(buffer_, buffer_line_, &consumed, &incomplete);
  consumed = std::min(consumed, buffer_.size());
  buffer_line_ += static_cast<int>(std::count(buffer_.begin(), buffer_.begin() + consumed, '\n'));
  buffer_.erase(0, consumed);
  if (incomplete) return false;
  buffer_line_ += static_cast<int>(std::count(buffer_.begin(), buffer_.end(), '\n'));
  buffer_.clear();
  return true;
}

// ---- library helpers --------------------------------------------------------------

std::string Session::eval_lisp(std::string_view text) {
  lisp::Interp::Activation act(*in_);
  lisp::Reader rd(*in_, text);
  Value form;
  std::string last = "NIL";
  while (rd.next(form)) {
    auto r = in_->errorset(form);
    if (r.storage) throw lisp::StorageExhausted(r.message);
    if (!r.ok) throw lisp::LispError(r.message);
    last = in_->prin1_string(r.value);
  }
  return last;
}

std::string Session::simplify(std::string_view expr) {
  lisp::Interp::Activation act(*in_);
  rlisp::Parser p(*in_, expr);
  Value e = p.expression_only();
  Value v = alg_->aeval(e);
  alg_->assign_log().clear();
  return out::Printer::plain(value_text(v));
}

bool Session::equivalent(std::string_view a, std::string_view b) {
  lisp::Interp::Activation act(*in_);
  Value ea = rlisp::Parser(*in_, a).expression_only();
  Value eb = rlisp::Parser(*in_, b).expression_only();
  alg::SQ d = alg_->simp(lisp::list(in_->sym("DIFFERENCE"), ea, eb));
  return d.num.is_zero();
}

}  // namespace rr
