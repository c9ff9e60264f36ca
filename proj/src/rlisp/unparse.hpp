#pragma once

#include <string>

#include "out/printer.hpp"

namespace rr::rlisp {

// Turns a parse tree back into RLISP text that parses to the same tree.
class Unparser {
 public:
  explicit Unparser(alg::Algebra& a);

  std::string statement(const lisp::Value& s);
  std::string expression(const lisp::Value& e);

 private:
  bool special(const lisp::Value& u, std::string& out);
  int special_prec(const lisp::Value& u);
  std::string name(const lisp::Symbol* s);
  std::string items(const lisp::Value& list, out::Printer::Ctx ctx);

  alg::Algebra& alg_;
  out::Printer pr_;
};

}  // namespace rr::rlisp
