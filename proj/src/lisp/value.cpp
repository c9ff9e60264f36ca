#include "lisp/value.hpp"

#include <functional>
#include <stdexcept>

#include "lisp/symbol.hpp"

namespace rr::lisp {

HeapStats*& active_heap() noexcept {
  thread_local HeapStats* heap = nullptr;
  return heap;
}

namespace {

void charge(std::size_t bytes) {
  HeapStats* h = active_heap();
  if (h == nullptr) return;
  if (h->limit != 0 && h->live_bytes + bytes > h->limit) {
    throw StorageExhausted("storage budget of " + std::to_string(h->limit) + " bytes exhausted");
  }
}

}  // namespace

Object::Object(Kind k, std::size_t bytes) noexcept
    : kind(k), charged(static_cast<std::uint32_t>(bytes)), heap(active_heap()) {
  if (heap != nullptr) {
    heap->live_bytes += charged;
    ++heap->allocations;
    if (heap->live_bytes > heap->peak_bytes) heap->peak_bytes = heap->live_bytes;
  }
}

Object::~Object() {
  if (heap != nullptr) heap->live_bytes -= charged;
}

void Value::release() noexcept {
  if (!heap_kind()) return;
  if (--obj_->refs != 0) return;
  // Long cdr chains are freed iteratively so that dropping a big list cannot
  // overflow the native stack.
  Object* dead = obj_;
  kind_ = Kind::Nil;
  fix_ = 0;
  while (dead != nullptr) {
    Object* next = nullptr;
    if (dead->kind == Kind::Pair) {
      auto* p = static_cast<Pair*>(dead);
      Value tail = std::move(p->cdr);
      if (tail.is_pair() && tail.obj_->refs == 1) {
        next = tail.obj_;
        tail.kind_ = Kind::Nil;
        tail.fix_ = 0;
      }
    }
    delete dead;
    dead = next;
  }
}

Pair::Pair(Value a, Value d) noexcept : Object(Kind::Pair, sizeof(Pair)), car(std::move(a)), cdr(std::move(d)) {}

Bignum::Bignum(int s, Value d) noexcept : Object(Kind::Bignum, sizeof(Bignum)), sign(s), digits(std::move(d)) {}

String::String(std::string s) noexcept
    : Object(Kind::String, sizeof(String) + s.size()), text(std::move(s)) {}

Vector::Vector(std::vector<Value> e) noexcept
    : Object(Kind::Vector, sizeof(Vector) + e.size() * sizeof(Value)), items(std::move(e)) {}

Opaque::Opaque() noexcept : Object(Kind::Opaque, 64) {}

Value cons(Value a, Value d) {
  charge(sizeof(Pair));
  return Value::adopt(new Pair(std::move(a), std::move(d)));
}

Value make_string(std::string s) {
  charge(sizeof(String) + s.size());
  return Value::adopt(new String(std::move(s)));
}

Value make_vector(std::vector<Value> items) {
  charge(sizeof(Vector) + items.size() * sizeof(Value));
  return Value::adopt(new Vector(std::move(items)));
}

Value list_from(const std::vector<Value>& items, Value tail) {
  Value r = std::move(tail);
  for (std::size_t i = items.size(); i-- > 0;) r = cons(items[i], std::move(r));
  return r;
}

std::vector<Value> list_to_vector(const Value& l) {
  std::vector<Value> out;
  for (const Value* p = &l; p->is_pair(); p = &p->as<Pair>().cdr) out.push_back(p->as<Pair>().car);
  return out;
}

std::size_t list_length(const Value& l) {
  std::size_t n = 0;
  for (const Value* p = &l; p->is_pair(); p = &p->as<Pair>().cdr) ++n;
  return n;
}

bool equal(const Value& a, const Value& b) {
  const Value* x = &a;
  const Value* y = &b;
  for (;;) {
    if (x->eq(*y)) return true;
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Kind::Pair: {
        const auto& px = x->as<Pair>();
        const auto& py = y->as<Pair>();
        if (!equal(px.car, py.car)) return false;
        x = &px.cdr;
        y = &py.cdr;
        continue;
      }
      case Kind::Bignum: {
        const auto& bx = x->as<Bignum>();
        const auto& by = y->as<Bignum>();
        return bx.sign == by.sign && equal(bx.digits, by.digits);
      }
      case Kind::String:
        return x->as<String>().text == y->as<String>().text;
      case Kind::Vector: {
        const auto& vx = x->as<Vector>().items;
        const auto& vy = y->as<Vector>().items;
        if (vx.size() != vy.size()) return false;
        for (std::size_t i = 0; i < vx.size(); ++i)
          if (!equal(vx[i], vy[i])) return false;
        return true;
      }
      default:
        return false;
    }
  }
}

std::size_t structural_hash(const Value& v) {
  auto mix = [](std::size_t h, std::size_t x) { return h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
  switch (v.kind()) {
    case Kind::Nil:
      return 0x51ed27;
    case Kind::Fixnum:
      return std::hash<std::int64_t>{}(v.fixnum_value());
    case Kind::Symbol:
      return std::hash<const void*>{}(v.symbol_ptr());
    case Kind::Bignum:
      return mix(static_cast<std::size_t>(v.as<Bignum>().sign), structural_hash(v.as<Bignum>().digits));
    case Kind::String:
      return std::hash<std::string>{}(v.as<String>().text);
    case Kind::Vector: {
      std::size_t h = 0x7ec;
      for (const auto& e : v.as<Vector>().items) h = mix(h, structural_hash(e));
      return h;
    }
    case Kind::Pair: {
      std::size_t h = 0x9a17;
      const Value* p = &v;
      for (; p->is_pair(); p = &p->as<Pair>().cdr) h = mix(h, structural_hash(p->as<Pair>().car));
      return mix(h, structural_hash(*p));
    }
    case Kind::Opaque:
      return std::hash<const void*>{}(v.object());
  }
  return 0;
}

}  // namespace rr::lisp
