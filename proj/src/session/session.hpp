#pragma once

#include <chrono>
#include <ctime>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "alg/algebra.hpp"
#include "lisp/interp.hpp"
#include "out/printer.hpp"

namespace rr {

struct SessionConfig {
  std::string prelude_manifest;  // empty: the prelude built into the library
  int width = 80;
  std::size_t storage_limit = std::size_t{64} << 20;
  bool echo = true;  // echo ";" statements before their results (batch style)
};

// One interpreter with the algebra system loaded: boots the prelude, runs
// source text statement by statement and writes the transcript.
class Session {
 public:
  using Sink = std::function<void(std::string_view)>;

  explicit Session(const SessionConfig& cfg);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  void set_output(Sink s);
  void set_error_output(Sink s);

  // Runs every statement; returns the number of statements that failed.
  int run_source(std::string_view src);

  // Interactive input: statements are run as soon as they are complete.
  // Returns false while a statement is still open.
  bool feed(std::string_view text, int& errors);
  bool pending() const { return !buffer_.empty(); }

  // True once END has been read.
  bool ended() const { return ended_; }

  // Library helpers. Each throws lisp::LispError on failure.
  std::string eval_lisp(std::string_view text);
  std::string simplify(std::string_view expr);
  bool equivalent(std::string_view a, std::string_view b);

  lisp::Interp& interp() { return *in_; }
  alg::Algebra& algebra() { return *alg_; }
  out::Printer& printer() { return *pr_; }

 private:
  void install();
  int run(std::string_view src, int first_line, std::size_t* consumed, bool* incomplete);
  bool execute(const lisp::Value& tree, bool echo, std::string_view text, int line);
  void report(int line, const std::string& msg);

  void print_result(const lisp::Value& tree, const lisp::Value& value);
  void print_lines(const std::string& marked);
  void print_matrix(const std::string& name, const alg::Matrix& m);
  std::string assignment_prefix(std::size_t from);
  std::string value_text(const lisp::Value& v);

  lisp::Value exec(const lisp::Value& stmt);
  lisp::Value write_items(const lisp::Value& items);
  void showtime();

  SessionConfig cfg_;
  std::unique_ptr<lisp::Interp> in_;
  std::unique_ptr<alg::Algebra> alg_;
  std::unique_ptr<out::Printer> pr_;
  Sink err_;
  std::string buffer_;
  int buffer_line_ = 1;
  bool ended_ = false;
  std::chrono::steady_clock::time_point wall_anchor_;
  std::clock_t cpu_anchor_;
};

}  // namespace rr
