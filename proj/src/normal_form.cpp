#include "matring/normal_form.hpp"

#include "matring/error.hpp"

namespace matring {
namespace {

class Reducer {
 public:
  explicit Reducer(const Matrix& a)
      : f_(a.spec()),
        n_(a.n()),
        w_(a),
        p_(Matrix::identity(a.field(), a.n())),
        q_(Matrix::identity(a.field(), a.n())) {}

  NormalFormWitness run() && {
    int t = 0;
    // n == 1 or a zero trailing block ends the reduction.
    while (t < n_ - 1 && !block_is_zero(t)) {
      make_unit_pivot(t);
      clear_cross(t);
      ++t;
    }
    int r = t;
    if (t < n_ && !w_(t, t).is_zero()) ++r;
    return NormalFormWitness{std::move(p_), std::move(q_), std::move(w_), r, std::move(ops_)};
  }

 private:
  bool block_is_zero(int t) const {
    for (int i = t; i < n_; ++i)
      for (int j = t; j < n_; ++j)
        if (!w_(i, j).is_zero()) return false;
    return true;
  }

  void emit(ElementaryOp op) {
    op.apply(w_);
    if (op.side == ElementaryOp::Side::Row) {
      p_ = op.matrix(w_.field(), n_) * p_;
    } else {
      q_ = q_ * op.matrix(w_.field(), n_);
    }
    ops_.push_back(op);
  }

  void type1(ElementaryOp::Side side, int from, int to, FieldElem c) {
    emit({ElementaryOp::Kind::Type1, side, from, to, c});
  }

  // Brings a 1 into position (t, t) of the nonzero trailing block.
  void make_unit_pivot(int t) {
    using Side = ElementaryOp::Side;
    const FieldElem pivot = w_(t, t);
    if (pivot == f_.one()) return;
    if (!pivot.is_zero()) {
      // E_a: row t scaled by a^-1, row t+1 by a.
      emit({ElementaryOp::Kind::Type2, Side::Row, t, t + 1, f_.inv(pivot)});
      return;
    }
    // Lexicographically smallest nonzero entry of the block.
    int pi = -1;
    int pj = -1;
    for (int i = t; i < n_ && pi < 0; ++i) {
      for (int j = t; j < n_; ++j) {
        if (!w_(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == t) {
      // Row t itself holds w(t, pj) != 0 with pj > t: fold column pj into column t.
      type1(Side::Column, pj, t, f_.inv(w_(t, pj)));
      return;
    }
    // Row t of the block is zero: bring a 1 to (t, pj), then into (t, t).
    type1(Side::Row, pi, t, f_.inv(w_(pi, pj)));
    if (pj != t) type1(Side::Column, pj, t, f_.one());
  }

  // Clears row t and column t outside the pivot.
  void clear_cross(int t) {
    using Side = ElementaryOp::Side;
    for (int i = t + 1; i < n_; ++i) {
      if (!w_(i, t).is_zero()) type1(Side::Row, t, i, f_.neg(w_(i, t)));
    }
    for (int j = t + 1; j < n_; ++j) {
      if (!w_(t, j).is_zero()) type1(Side::Column, t, j, f_.neg(w_(t, j)));
    }
  }

  const FieldSpec& f_;
  int n_;
  Matrix w_;
  Matrix p_;
  Matrix q_;
  std::vector<ElementaryOp> ops_;
};

}  // namespace

Matrix ElementaryOp::matrix(const Field& field, int n) const {
  Matrix e = Matrix::identity(field, n);
  if (kind == Kind::Type1) {
    // Row: row_j += c row_i  -> E[j][i] = c.  Column: col_j += c col_i -> E[i][j] = c.
    if (side == Side::Row) {
      e.set(j, i, scalar);
    } else {
      e.set(i, j, scalar);
    }
  } else {
    e.set(i, i, scalar);
    e.set(j, j, field->inv(scalar));
  }
  return e;
}

void ElementaryOp::apply(Matrix& a) const {
  const FieldSpec& f = a.spec();
  const int n = a.n();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorCode::DimensionMismatch, "elementary op indices out of range");
  }
  if (kind == Kind::Type1) {
    for (int k = 0; k < n; ++k) {
      if (side == Side::Row) {
        a.set(j, k, f.add(a(j, k), f.mul(scalar, a(i, k))));
      } else {
        a.set(k, j, f.add(a(k, j), f.mul(scalar, a(k, i))));
      }
    }
    return;
  }
  const FieldElem s_inv = f.inv(scalar);
  for (int k = 0; k < n; ++k) {
    if (side == Side::Row) {
      a.set(i, k, f.mul(scalar, a(i, k)));
      a.set(j, k, f.mul(s_inv, a(j, k)));
    } else {
      a.set(k, i, f.mul(scalar, a(k, i)));
      a.set(k, j, f.mul(s_inv, a(k, j)));
    }
  }
}

NormalFormWitness sl_normal_form(const Matrix& a) { return Reducer(a).run(); }

Matrix canonical_normal_form(const Field& field, int n, int r, FieldElem d) {
  Matrix m(field, n);
  for (int i = 0; i < r; ++i) m.set(i, i, field->one());
  if (r == n) m.set(n - 1, n - 1, d);
  return m;
}

bool is_gl_equivalent(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "different dimensions");
  if (!same_field(a.spec(), b.spec())) throw Error(ErrorCode::FieldMismatch, "different fields");
  return rank(a) == rank(b);
}

bool is_sl_equivalent(const Matrix& a, const Matrix& b) {
  return is_gl_equivalent(a, b) && det(a) == det(b);
}

std::pair<Matrix, Matrix> certify_sl_equivalence(const Matrix& a, const Matrix& b) {
  if (!is_sl_equivalent(a, b)) {
    throw Error(ErrorCode::NotEquivalent, "rank or determinant differ");
  }
  // P1 a Q1 = D = P2 b Q2  =>  (P2^-1 P1) a (Q1 Q2^-1) = b
  auto wa = sl_normal_form(a);
  auto wb = sl_normal_form(b);
  if (!(wa.D == wb.D)) throw Error(ErrorCode::NotEquivalent, "normal forms differ");
  return {mat_inv(wb.P) * wa.P, wa.Q * mat_inv(wb.Q)};
}

bool verify_normal_form(const Matrix& a, const NormalFormWitness& w) {
  const auto one = a.spec().one();
  if (det(w.P) != one || det(w.Q) != one) return false;
  if (!(w.P * a * w.Q == w.D)) return false;
  const int r = rank(a);
  if (w.rank != r) return false;
  if (!(w.D == canonical_normal_form(a.field(), a.n(), r, det(a)))) return false;
  Matrix replay = a;
  for (const auto& op : w.ops) {
    if (det(op.matrix(a.field(), a.n())) != one) return false;
    op.apply(replay);
  }
  return replay == w.D;
}

}  // namespace matring
