#pragma once

// Reduction of a matrix to its SL_n-equivalence normal form
//
//   D = diag(1, ..., 1, d, 0, ..., 0),  d = det(A) if rank A = n, else 1,
//
// using only determinant-1 elementary operations, with the accumulated
// transforms P, Q (det 1) such that P * A * Q = D.

#include <utility>
#include <vector>

#include "matring/matrix.hpp"

namespace matring {

struct ElementaryOp {
  enum class Kind {
    Type1,  // add scalar * (row|col) i to (row|col) j, i != j
    Type2,  // scale (row|col) i by scalar and (row|col) j by scalar^-1, i != j
  };
  enum class Side { Row, Column };

  Kind kind;
  Side side;
  int i;
  int j;
  FieldElem scalar;

  /// E such that the op is E * A (rows) or A * E (columns). det(E) == 1.
  Matrix matrix(const Field& field, int n) const;
  /// Applies the op to `a` in place.
  void apply(Matrix& a) const;

  friend bool operator==(const ElementaryOp&, const ElementaryOp&) = default;
};

struct NormalFormWitness {
  Matrix P;
  Matrix Q;
  Matrix D;
  int rank;
  std::vector<ElementaryOp> ops;
};

NormalFormWitness sl_normal_form(const Matrix& a);

/// The canonical normal form for a given rank and determinant.
Matrix canonical_normal_form(const Field& field, int n, int rank, FieldElem det);

bool is_gl_equivalent(const Matrix& a, const Matrix& b);
bool is_sl_equivalent(const Matrix& a, const Matrix& b);

/// (P, Q) with det P = det Q = 1 and P * a * Q == b. Throws NotEquivalent.
std::pair<Matrix, Matrix> certify_sl_equivalence(const Matrix& a, const Matrix& b);

/// Checks every witness invariant against the input `a` exactly.
bool verify_normal_form(const Matrix& a, const NormalFormWitness& w);

}  // namespace matring
