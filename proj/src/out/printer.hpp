#pragma once

#include <functional>
#include <string>
#include <vector>

#include "alg/algebra.hpp"

namespace rr::out {

using alg::SQ;
using lisp::Value;

// Linear infix printing. Text is first produced with break markers and then
// laid out into lines; continuation lines start with one extra space, so
// dropping that space and concatenating restores the logical line.
class Printer {
 public:
  static constexpr char kSoft = '\x01';
  static constexpr char kHard = '\x02';

  explicit Printer(alg::Algebra& a) : alg_(a) {}

  int width = 80;
  // Keep a+(-b) distinct from a-b, for text that must re-read to the same tree.
  bool exact = false;
  // Prints forms the algebraic printer does not know; returns false to decline.
  std::function<bool(const Value&, std::string&)> other;
  // Precedence of such forms, or -1 when `other` does not handle them.
  std::function<int(const Value&)> other_prec;

  std::string sq(const SQ& q);
  std::string prefix(const Value& u);

  std::vector<std::string> layout(const std::string& marked) const;
  static std::string plain(const std::string& marked);
  // Joins continuation lines back into logical lines.
  static std::vector<std::string> join(const std::vector<std::string>& lines);

  static std::string symbol_name(const lisp::Symbol* s);

  // Contexts that decide parenthesization.
  enum Ctx { Any, Term, First, Factor, Power };
  void emit(const Value& u, Ctx ctx, std::string& out);

 private:
  int prec(const Value& u) const;
  void emit_sum_terms(const std::vector<std::pair<bool, Value>>& terms, bool hard, std::string& out);
  void emit_number(const Value& n, std::string& out);

  alg::Algebra& alg_;
};

}  // namespace rr::out
