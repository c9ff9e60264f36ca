#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rr::lisp {

struct Symbol;

enum class Kind : std::uint8_t { Nil, Fixnum, Symbol, Bignum, String, Vector, Pair, Opaque };

// Live-storage accounting for one interpreter instance. `limit == 0` means
// unlimited.
struct HeapStats {
  std::size_t live_bytes = 0;
  std::size_t peak_bytes = 0;
  std::size_t limit = 0;
  std::size_t allocations = 0;
};

// The heap that newly created objects are charged to. Set by Interp while it
// is active on the current thread.
HeapStats*& active_heap() noexcept;

struct Object {
  explicit Object(Kind k, std::size_t bytes) noexcept;
  Object(const Object&) = delete;
  Object& operator=(const Object&) = delete;
  virtual ~Object();

  std::uint32_t refs = 1;
  Kind kind;
  std::uint32_t charged;
  HeapStats* heap;
};

// Immutable-by-default tagged Lisp value. Fixnums and symbols are immediate;
// everything else is a reference-counted heap object. Symbols are owned by
// their interpreter's symbol table, so a Value must not outlive it.
class Value {
 public:
  Value() noexcept : kind_(Kind::Nil), fix_(0) {}
  Value(const Value& o) noexcept : kind_(o.kind_), fix_(o.fix_) { retain(); }
  Value(Value&& o) noexcept : kind_(o.kind_), fix_(o.fix_) {
    o.kind_ = Kind::Nil;
    o.fix_ = 0;
  }
  Value& operator=(const Value& o) noexcept {
    if (this != &o) {
      Value tmp(o);
      swap(tmp);
    }
    return *this;
  }
  Value& operator=(Value&& o) noexcept {
    if (this != &o) {
      Value tmp(std::move(o));
      swap(tmp);
    }
    return *this;
  }
  ~Value() { release(); }

  void swap(Value& o) noexcept {
    std::swap(kind_, o.kind_);
    std::swap(fix_, o.fix_);
  }

  static Value fixnum(std::int64_t n) noexcept {
    Value v;
    v.kind_ = Kind::Fixnum;
    v.fix_ = n;
    return v;
  }
  static Value symbol(Symbol* s) noexcept {
    Value v;
    if (s != nullptr) {
      v.kind_ = Kind::Symbol;
      v.sym_ = s;
    }
    return v;
  }
  // Takes ownership of a freshly allocated object (refcount already 1).
  static Value adopt(Object* o) noexcept {
    Value v;
    v.kind_ = o->kind;
    v.obj_ = o;
    return v;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_nil() const noexcept { return kind_ == Kind::Nil; }
  bool is_fixnum() const noexcept { return kind_ == Kind::Fixnum; }
  bool is_bignum() const noexcept { return kind_ == Kind::Bignum; }
  bool is_integer() const noexcept { return kind_ == Kind::Fixnum || kind_ == Kind::Bignum; }
  // NIL is a symbol too.
  bool is_symbol() const noexcept { return kind_ == Kind::Symbol || kind_ == Kind::Nil; }
  bool is_pair() const noexcept { return kind_ == Kind::Pair; }
  bool is_string() const noexcept { return kind_ == Kind::String; }
  bool is_vector() const noexcept { return kind_ == Kind::Vector; }
  bool is_opaque() const noexcept { return kind_ == Kind::Opaque; }
  bool is_atom() const noexcept { return kind_ != Kind::Pair; }

  std::int64_t fixnum_value() const noexcept { return fix_; }
  // Null for NIL.
  Symbol* symbol_ptr() const noexcept { return kind_ == Kind::Symbol ? sym_ : nullptr; }
  Object* object() const noexcept { return heap_kind() ? obj_ : nullptr; }

  template <class T>
  T& as() const noexcept {
    return *static_cast<T*>(obj_);
  }

  // Identity in the EQ sense: same symbol, same heap object, equal fixnums.
  bool eq(const Value& o) const noexcept { return kind_ == o.kind_ && fix_ == o.fix_; }

 private:
  bool heap_kind() const noexcept {
    return kind_ != Kind::Nil && kind_ != Kind::Fixnum && kind_ != Kind::Symbol;
  }
  void retain() const noexcept {
    if (heap_kind()) ++obj_->refs;
  }
  void release() noexcept;

  Kind kind_;
  union {
    std::int64_t fix_;
    Object* obj_;
    Symbol* sym_;
  };
};

struct Pair final : Object {
  Pair(Value a, Value d) noexcept;
  Value car;
  Value cdr;
};

// Sign-magnitude integer outside the fixnum range. `digits` is a Lisp list of
// fixnums in base kBigRadix, least significant first, top digit nonzero.
struct Bignum final : Object {
  Bignum(int s, Value d) noexcept;
  int sign;
  Value digits;
};

inline constexpr std::int64_t kBigRadix = 10000;
inline constexpr int kBigRadixDigits = 4;

struct String final : Object {
  explicit String(std::string s) noexcept;
  std::string text;
};

struct Vector final : Object {
  explicit Vector(std::vector<Value> e) noexcept;
  std::vector<Value> items;
};

// Host objects carried through Lisp data (simplified quotients, matrices).
struct Opaque : Object {
  Opaque() noexcept;
  virtual std::string describe() const = 0;
};

Value cons(Value a, Value d);
Value make_string(std::string s);
Value make_vector(std::vector<Value> items);

inline const Value& car(const Value& v) {
  static const Value nil;
  return v.is_pair() ? v.as<Pair>().car : nil;
}
inline const Value& cdr(const Value& v) {
  static const Value nil;
  return v.is_pair() ? v.as<Pair>().cdr : nil;
}

template <class... Ts>
Value list(Ts&&... xs) {
  Value items[] = {Value(std::forward<Ts>(xs))..., Value()};
  Value r;
  for (std::size_t i = sizeof...(Ts); i-- > 0;) r = cons(std::move(items[i]), std::move(r));
  return r;
}

Value list_from(const std::vector<Value>& items, Value tail = Value());
std::vector<Value> list_to_vector(const Value& l);
std::size_t list_length(const Value& l);

// Structural equality (EQUAL): numbers by value, strings by content.
bool equal(const Value& a, const Value& b);
std::size_t structural_hash(const Value& v);

struct StructuralHash {
  std::size_t operator()(const Value& v) const { return structural_hash(v); }
};
struct StructuralEqual {
  bool operator()(const Value& a, const Value& b) const { return equal(a, b); }
};

}  // namespace rr::lisp
