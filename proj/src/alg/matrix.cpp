// Matrix expressions: literals, arithmetic, determinants and inverses.

#include "alg/algebra.hpp"

namespace rr::alg {

using lisp::car;
using lisp::cdr;

static MatBox* as_matbox(const Value& v) {
  if (!v.is_opaque()) return nullptr;
  return dynamic_cast<MatBox*>(&v.as<lisp::Opaque>());
}

bool Algebra::is_matrix_expr(const Value& u) {
  if (u.is_symbol()) {
    Symbol* s = u.symbol_ptr();
    if (s == nullptr) return false;
    if (s->local_depth > 0 && s->bound) return as_matbox(s->value) != nullptr;
    if (matrices_.count(s)) return true;
    auto g = globals_.find(s);
    return g != globals_.end() && as_matbox(g->second) != nullptr;
  }
  if (u.is_opaque()) return as_matbox(u) != nullptr;
  if (!u.is_pair()) return false;
  Symbol* h = car(u).symbol_ptr();
  if (h == n_.mat) return true;
  if (h == n_.plus || h == n_.minus || h == n_.difference || h == n_.times || h == n_.quotient) {
    for (Value p = cdr(u); p.is_pair(); p = cdr(p))
      if (is_matrix_expr(car(p))) return true;
    return false;
  }
  if (h == n_.expt) return is_matrix_expr(car(cdr(u)));
  if (h == n_.setq) {
    const Value& t = car(cdr(u));
    if (t.is_symbol() && t.symbol_ptr() != nullptr && matrices_.count(t.symbol_ptr())) return true;
    return is_matrix_expr(car(cdr(cdr(u))));
  }
  if (h == n_.if_) return is_matrix_expr(car(cdr(cdr(u))));
  return false;
}

void Algebra::refresh(Matrix& m) {
  for (auto& x : m.e) x = simp(prepsq(x));
}

Matrix Algebra::matrix_value(const Value& v) {
  MatBox* b = as_matbox(v);
  if (b == nullptr) alg_error("matrix expected, got " + in.prin1_string(v));
  if (b->epoch != epoch_) {
    refresh(b->m);
    b->epoch = epoch_;
  }
  return b->m;
}

Matrix Algebra::mat_literal(const Value& u) {
  Matrix m;
  std::vector<std::vector<Value>> rows;
  for (Value p = cdr(u); p.is_pair(); p = cdr(p)) {
    const Value& r = car(p);
    std::vector<Value> row;
    if (r.is_pair() && car(r).symbol_ptr() == n_.tuple)
      for (Value q = cdr(r); q.is_pair(); q = cdr(q)) row.push_back(car(q));
    else
      row.push_back(r);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) alg_error("empty matrix");
  m.rows = static_cast<int>(rows.size());
  m.cols = static_cast<int>(rows[0].size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m.cols) alg_error("matrix rows have different lengths");
    for (const auto& x : row) m.e.push_back(simp(x));
  }
  return m;
}

Matrix Algebra::mat_add(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) alg_error("matrix dimensions do not match for addition");
  Matrix r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = ring.addsq(a.e[i], b.e[i]);
  return r;
}

Matrix Algebra::mat_scale(const Matrix& a, const SQ& s) {
  Matrix r = a;
  for (auto& x : r.e) x = simp_times(x, s);
  return r;
}

Matrix Algebra::mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) alg_error("matrix dimensions do not match for multiplication");
  Matrix r;
  r.rows = a.rows;
  r.cols = b.cols;
  r.e.resize(static_cast<std::size_t>(r.rows) * r.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      SQ s;
      for (int k = 0; k < a.cols; ++k) s = ring.addsq(s, ring.multsq(a.at(i, k), b.at(k, j)));
      r.at(i, j) = has_product_rules() ? subs2(s) : s;
    }
  return r;
}

static Matrix minor_of(const Matrix& m, int row, int col) {
  Matrix r;
  r.rows = m.rows - 1;
  r.cols = m.cols - 1;
  for (int i = 0; i < m.rows; ++i) {
    if (i == row) continue;
    for (int j = 0; j < m.cols; ++j)
      if (j != col) r.e.push_back(m.at(i, j));
  }
  return r;
}

SQ Algebra::det(const Matrix& m) {
  if (m.rows != m.cols) alg_error("determinant of a non-square matrix");
  int n = m.rows;
  if (n == 1) return m.at(0, 0);
  if (n <= 4) {
    SQ r;
    for (int j = 0; j < n; ++j) {
      if (m.at(0, j).num.is_zero()) continue;
      SQ t = ring.multsq(m.at(0, j), det(minor_of(m, 0, j)));
      r = ring.addsq(r, j % 2 == 0 ? t : ring.negsq(t));
    }
    return has_product_rules() ? subs2(r) : r;
  }
  // Bareiss elimination; each division is exact.
  Matrix a = m;
  SQ prev = Ring::number(Value::fixnum(1));
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k).num.is_zero()) {
      int p = k + 1;
      while (p < n && a.at(p, k).num.is_zero()) ++p;
      if (p == n) return SQ{};
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      negate = !negate;
    }
    SQ inv = ring.invsq(prev);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        SQ t = ring.addsq(ring.multsq(a.at(i, j), a.at(k, k)), ring.negsq(ring.multsq(a.at(i, k), a.at(k, j))));
        a.at(i, j) = ring.multsq(t, inv);
      }
    prev = a.at(k, k);
  }
  SQ r = a.at(n - 1, n - 1);
  if (negate) r = ring.negsq(r);
  return has_product_rules() ? subs2(r) : r;
}

Matrix Algebra::mat_inverse(const Matrix& m) {
  if (m.rows != m.cols) alg_error("inverse of a non-square matrix");
  int n = m.rows;
  Matrix r = m;
  if (n <= 4) {
    SQ d = det(m);
    if (d.num.is_zero()) alg_error("singular matrix");
    SQ dinv = ring.invsq(d);
    if (n == 1) {
      r.at(0, 0) = dinv;
      return r;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        SQ c = det(minor_of(m, j, i));
        if ((i + j) % 2 != 0) c = ring.negsq(c);
        r.at(i, j) = simp_times(c, dinv);
      }
    return r;
  }
  // Gauss-Jordan over quotients.
  Matrix a = m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = Ring::number(Value::fixnum(i == j ? 1 : 0));
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a.at(p, k).num.is_zero()) ++p;
    if (p == n) alg_error("singular matrix");
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(p, j));
        std::swap(r.at(k, j), r.at(p, j));
      }
    SQ inv = ring.invsq(a.at(k, k));
    for (int j = 0; j < n; ++j) {
      a.at(k, j) = ring.multsq(a.at(k, j), inv);
      r.at(k, j) = ring.multsq(r.at(k, j), inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a.at(i, k).num.is_zero()) continue;
      SQ f = a.at(i, k);
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = ring.addsq(a.at(i, j), ring.negsq(ring.multsq(f, a.at(k, j))));
        r.at(i, j) = ring.addsq(r.at(i, j), ring.negsq(ring.multsq(f, r.at(k, j))));
      }
    }
  }
  if (has_product_rules())
    for (auto& x : r.e) x = subs2(x);
  return r;
}

Matrix Algebra::mat_pow(const Matrix& a, std::int64_t n) {
  if (a.rows != a.cols) alg_error("power of a non-square matrix");
  Matrix base = n < 0 ? mat_inverse(a) : a;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  Matrix r;
  r.rows = r.cols = a.rows;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.e.push_back(Ring::number(Value::fixnum(i == j ? 1 : 0)));
  while (k > 0) {
    if (k & 1) r = mat_mul(r, base);
    k >>= 1;
    if (k > 0) base = mat_mul(base, base);
  }
  return r;
}

Matrix Algebra::mat_eval(const Value& u) {
  if (u.is_symbol() && u.symbol_ptr() != nullptr) {
    Symbol* s = u.symbol_ptr();
    if (s->local_depth > 0 && s->bound) return matrix_value(s->value);
    if (auto* slot = matrix(s)) {
      if (!slot->value) alg_error("matrix " + s->name + " has no value");
      if (slot->epoch != epoch_) {
        refresh(*slot->value);
        slot->epoch = epoch_;
      }
      return *slot->value;
    }
    auto g = globals_.find(s);
    if (g != globals_.end()) return matrix_value(g->second);
    alg_error(s->name + " is not a matrix");
  }
  if (u.is_opaque()) return matrix_value(u);
  if (!u.is_pair()) alg_error("matrix expected, got " + in.prin1_string(u));
  Symbol* h = car(u).symbol_ptr();
  const Value& args = cdr(u);
  if (h == n_.mat) return mat_literal(u);
  if (h == n_.setq) return matrix_value(assign(car(args), car(cdr(args))));
  if (h == n_.if_) return boolean(car(args)) ? mat_eval(car(cdr(args))) : mat_eval(car(cdr(cdr(args))));
  if (h == n_.plus) {
    std::optional<Matrix> r;
    for (Value p = args; p.is_pair(); p = cdr(p)) {
      if (!is_matrix_expr(car(p))) alg_error("cannot add a scalar to a matrix");
      Matrix m = mat_eval(car(p));
      r = r ? mat_add(*r, m) : m;
    }
    return *r;
  }
  if (h == n_.minus) return mat_scale(mat_eval(car(args)), Ring::number(Value::fixnum(-1)));
  if (h == n_.difference) {
    if (!is_matrix_expr(car(args)) || !is_matrix_expr(car(cdr(args))))
      alg_error("cannot add a scalar to a matrix");
    return mat_add(mat_eval(car(args)), mat_scale(mat_eval(car(cdr(args))), Ring::number(Value::fixnum(-1))));
  }
  if (h == n_.times) {
    std::optional<Matrix> m;
    SQ scale = Ring::number(Value::fixnum(1));
    for (Value p = args; p.is_pair(); p = cdr(p)) {
      if (is_matrix_expr(car(p))) {
        Matrix x = mat_eval(car(p));
        m = m ? mat_mul(*m, x) : x;
      } else {
        scale = simp_times(scale, simp(car(p)));
      }
    }
    return mat_scale(*m, scale);
  }
  if (h == n_.quotient) {
    const Value& a = car(args);
    const Value& b = car(cdr(args));
    if (is_matrix_expr(b)) {
      Matrix inv = mat_inverse(mat_eval(b));
      if (is_matrix_expr(a)) return mat_mul(mat_eval(a), inv);
      return mat_scale(inv, simp(a));
    }
    SQ d = simp(b);
    if (d.num.is_zero()) alg_error("zero divisor");
    return mat_scale(mat_eval(a), ring.invsq(d));
  }
  if (h == n_.expt) {
    std::int64_t n = integer(car(cdr(args)), "matrix exponent");
    return mat_pow(mat_eval(car(args)), n);
  }
  alg_error("illegal matrix expression " + in.prin1_string(u));
}

}  // namespace rr::alg
