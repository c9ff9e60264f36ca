#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lisp/value.hpp"

namespace rr::lisp {

class Interp;

// Any failure a Lisp program can observe and trap with ERRORSET.
class LispError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StorageExhausted : public LispError {
 public:
  using LispError::LispError;
};

// The reader ran out of characters in the middle of a datum.
class IncompleteInput : public LispError {
 public:
  using LispError::LispError;
};

using BuiltinFn = std::function<Value(Interp&, std::span<const Value>)>;
// Special forms receive the unevaluated argument list.
using SpecialFn = std::function<Value(Interp&, const Value&)>;

struct Builtin {
  BuiltinFn fn;
  int min_args = 0;
  int max_args = -1;  // -1: variadic
};

struct FunctionCell {
  enum class Type : std::uint8_t { None, Builtin, Special, Expr };
  Type type = Type::None;
  Builtin builtin;
  SpecialFn special;
  Value lambda;  // (LAMBDA params . body) for Expr
};

// Interned identifier with independent value and function cells.
struct Symbol {
  explicit Symbol(std::string n) : name(std::move(n)) {}

  std::string name;
  Value value;
  bool bound = false;
  bool constant = false;
  // Number of live lambda/PROG bindings; the algebra layer treats a bound
  // symbol as a local variable.
  std::uint32_t local_depth = 0;
  FunctionCell fn;
  std::vector<std::pair<Symbol*, Value>> plist;

  const Value* find_prop(const Symbol* key) const {
    for (const auto& [k, v] : plist)
      if (k == key) return &v;
    return nullptr;
  }
  void put_prop(Symbol* key, Value v) {
    for (auto& [k, old] : plist)
      if (k == key) {
        old = std::move(v);
        return;
      }
    plist.emplace_back(key, std::move(v));
  }
  bool remove_prop(const Symbol* key) {
    for (auto it = plist.begin(); it != plist.end(); ++it)
      if (it->first == key) {
        plist.erase(it);
        return true;
      }
    return false;
  }
};

}  // namespace rr::lisp
