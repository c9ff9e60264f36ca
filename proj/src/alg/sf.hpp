#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lisp/interp.hpp"

namespace rr::alg {

using lisp::Value;

// An indivisible indeterminate. Kernels are interned per session, so pointer
// identity is structural identity. Smaller `order` means more main.
struct Kernel {
  Value prefix;
  std::int64_t order = 0;
  std::uint32_t id = 0;
  lisp::Symbol* head = nullptr;  // operator symbol, or the variable itself
};

struct SFNode;

// Standard form: a number, or  mvar**ldeg * lc + red  with lc and red built
// only from kernels less main than mvar (red may repeat mvar at lower degree).
class SF {
 public:
  SF() : num_(Value::fixnum(0)) {}
  explicit SF(Value n) : num_(std::move(n)) {}
  static SF fix(std::int64_t n) { return SF(Value::fixnum(n)); }
  static SF make(Kernel* k, int deg, SF lc, SF red);
  static SF power(Kernel* k, int deg) { return make(k, deg, fix(1), SF()); }

  bool is_number() const noexcept { return node_ == nullptr; }
  bool is_zero() const noexcept { return !node_ && num_.is_fixnum() && num_.fixnum_value() == 0; }
  bool is_one() const noexcept { return !node_ && num_.is_fixnum() && num_.fixnum_value() == 1; }
  const Value& number() const noexcept { return num_; }

  Kernel* mvar() const noexcept;
  int ldeg() const noexcept;
  const SF& lc() const noexcept;
  const SF& red() const noexcept;
  const SFNode* node() const noexcept { return node_.get(); }

 private:
  Value num_;
  std::shared_ptr<const SFNode> node_;
};

struct SFNode {
  Kernel* k;
  int deg;
  SF lc;
  SF red;
};

inline Kernel* SF::mvar() const noexcept { return node_->k; }
inline int SF::ldeg() const noexcept { return node_->deg; }
inline const SF& SF::lc() const noexcept { return node_->lc; }
inline const SF& SF::red() const noexcept { return node_->red; }

// Standard quotient, kept in lowest terms with a positive leading numeric
// coefficient in the denominator.
struct SQ {
  SF num;
  SF den = SF::fix(1);
};

// One fully expanded term: coefficient times a product of kernel powers in
// kernel order (most main first).
struct Monomial {
  Value coeff;
  std::vector<std::pair<Kernel*, int>> powers;
};

// Integer coefficient arithmetic and the polynomial operations. Coefficients
// are Lisp integers, so bignum work goes through the kernel and prelude.
class Ring {
 public:
  explicit Ring(lisp::Interp& in) : in_(in) {}

  lisp::Interp& interp() noexcept { return in_; }

  bool mcd = true;

  static bool more_main(const Kernel* a, const Kernel* b) noexcept {
    return a->order < b->order || (a->order == b->order && a->id < b->id);
  }

  // Coefficients.
  Value nadd(const Value& a, const Value& b);
  Value nsub(const Value& a, const Value& b);
  Value nmul(const Value& a, const Value& b);
  Value nneg(const Value& a);
  Value nquot(const Value& a, const Value& b);
  Value nrem(const Value& a, const Value& b);
  Value ngcd(const Value& a, const Value& b);
  int nsign(const Value& a);
  static bool nzero(const Value& a) noexcept { return a.is_fixnum() && a.fixnum_value() == 0; }
  static bool nunit(const Value& a) noexcept {
    return a.is_fixnum() && (a.fixnum_value() == 1 || a.fixnum_value() == -1);
  }

  // Forms.
  SF addf(const SF& f, const SF& g);
  SF negf(const SF& f);
  SF multf(const SF& f, const SF& g);
  SF multn(const SF& f, const Value& n);
  SF exptf(const SF& f, int n);
  std::optional<SF> quotf(const SF& f, const SF& g);
  SF gcdf(const SF& f, const SF& g);
  bool equalf(const SF& f, const SF& g);
  Value lnc(const SF& f);
  Value numcontent(const SF& f);
  int mindeg(const SF& f, const Kernel* k);
  int degree(const SF& f, const Kernel* k);
  bool is_monomial(const SF& f);
  SF normalize(const SF& f);

  void monomials(const SF& f, std::vector<Monomial>& out);
  SF from_monomial(const Monomial& m);

  // Quotients.
  SQ canonsq(SF n, SF d);
  SQ addsq(const SQ& a, const SQ& b);
  SQ negsq(const SQ& a);
  SQ multsq(const SQ& a, const SQ& b);
  SQ invsq(const SQ& a);
  SQ exptsq(const SQ& a, std::int64_t n);
  bool equalsq(const SQ& a, const SQ& b) { return equalf(a.num, b.num) && equalf(a.den, b.den); }
  static SQ number(Value n) { return SQ{SF(std::move(n)), SF::fix(1)}; }

 private:
  SF gcd_monomial(const SF& m, const SF& g);
  SF gcd_coeffs(const SF& f, const SF& g, const Kernel* x);
  SF content(const SF& f, const Kernel* x);
  SF prem(SF a, const SF& b, Kernel* x);
  SF prs(SF a, SF b, Kernel* x);
  void monomials_rec(const SF& f, Monomial& prefix, std::vector<Monomial>& out);

  lisp::Interp& in_;
};

class DivisionByZero : public lisp::LispError {
 public:
  DivisionByZero() : lisp::LispError("zero divisor") {}
};

}  // namespace rr::alg
