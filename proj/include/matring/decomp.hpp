#pragma once

// Constructive sum-of-units decompositions in Mat_n(F_q).

#include <vector>

#include "matring/matrix.hpp"

namespace matring {

struct DecompositionWitness {
  enum class Mode { TwoUnits, TwoSL, ThreeSL };

  Mode mode;
  std::vector<Matrix> summands;
  Matrix target;
};

std::string_view to_string(DecompositionWitness::Mode mode);

/// A = U1 + U2 with U1, U2 invertible. For q > 2 the first unit in code
/// order with A - U invertible is taken; for q = 2 the rank tables are
/// transported through the normal form (block induction for n >= 4).
/// Throws TrivialCaseF2 for n = 1, q = 2, A = 1.
DecompositionWitness sum_of_two_units(const Matrix& a);

/// A = S1 + S2 with det S1 = det S2 = 1. Throws Unsupported for n = 1 and
/// ZeroNeedsThree for A = 0 with n odd in odd characteristic.
DecompositionWitness sum_of_two_sl(const Matrix& a);

/// Zero as a sum of determinant-1 matrices: two summands when n is even or
/// the characteristic is 2, three otherwise.
DecompositionWitness sum_of_sl_zero(const Field& field, int n);

bool verify_decomposition(const DecompositionWitness& w);

}  // namespace matring
