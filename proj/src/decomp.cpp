#include "matring/decomp.hpp"

#include <utility>

#include "matring/error.hpp"
#include "matring/normal_form.hpp"

namespace matring {
namespace {

using Pair = std::pair<Matrix, Matrix>;

Matrix rows(const Field& f, int n, std::initializer_list<FieldElem> entries) {
  return Matrix(f, n, std::vector<FieldElem>(entries));
}

// Moves a decomposition of T = P' A Q' back to A.
Pair transport(const Pair& parts, const Matrix& p, const Matrix& q) {
  const Matrix p_inv = mat_inv(p);
  const Matrix q_inv = mat_inv(q);
  return {p_inv * parts.first * q_inv, p_inv * parts.second * q_inv};
}

// --- two units over F_2 ----------------------------------------------------

// Rank tables for Mat_2(F_2) and Mat_3(F_2), indexed by rank >= 1.
Pair f2_units_table(const Field& f, int n, int r) {
  const FieldElem o{0};
  const FieldElem l{1};
  if (n == 2) {
    if (r == 1) return {rows(f, 2, {o, l, l, o}), rows(f, 2, {l, l, l, o})};
    return {rows(f, 2, {l, l, l, o}), rows(f, 2, {o, l, l, l})};
  }
  if (r == 1) {
    return {rows(f, 3, {o, l, o, l, o, o, o, o, l}), rows(f, 3, {l, l, o, l, o, o, o, o, l})};
  }
  if (r == 2) {
    return {rows(f, 3, {o, l, o, o, o, l, l, o, o}), rows(f, 3, {l, l, o, o, l, l, l, o, o})};
  }
  return {rows(f, 3, {l, l, o, o, o, l, l, o, o}), rows(f, 3, {o, l, o, o, l, l, l, o, l})};
}

// Units summing to diag(1^r, 0^(n-r)) over F_2.
Pair f2_units_for_normal_form(const Field& f, int n, int r) {
  if (r == 0) {
    const Matrix id = Matrix::identity(f, n);
    return {id, mat_neg(id)};
  }
  if (n <= 3) return f2_units_table(f, n, r);
  if (r == n) {
    // I_n = diag(I_2, I_{n-2})
    auto head = f2_units_table(f, 2, 2);
    auto tail = f2_units_for_normal_form(f, n - 2, n - 2);
    return {block_diagonal(head.first, tail.first), block_diagonal(head.second, tail.second)};
  }
  // Last row and column vanish: diag(D', 0) = diag(A1, 1) + diag(A2, -1).
  auto inner = f2_units_for_normal_form(f, n - 1, r);
  const Matrix one = Matrix::identity(f, 1);
  return {block_diagonal(inner.first, one), block_diagonal(inner.second, mat_neg(one))};
}

// --- two SL matrices --------------------------------------------------------

Pair sl_pair_for_normal_form(const Matrix& d, int r);

Pair sl_pair_n2(const Field& f, int r, FieldElem alpha) {
  const FieldSpec& s = *f;
  const FieldElem o = s.zero();
  const FieldElem l = s.one();
  const FieldElem m = s.neg(l);
  if (r == 1) {
    // [[1,0],[0,0]] = [[0,-1],[1,0]] + [[1,1],[-1,0]]
    return {rows(f, 2, {o, m, l, o}), rows(f, 2, {l, l, m, o})};
  }
  // diag(1, a) = [[0, a^-1], [-a, a]] + [[1, -a^-1], [a, 0]]
  const FieldElem ai = s.inv(alpha);
  return {rows(f, 2, {o, ai, s.neg(alpha), alpha}), rows(f, 2, {l, s.neg(ai), alpha, o})};
}

Pair sl_pair_n3_char2(const Field& f, int r, FieldElem alpha) {
  const FieldElem o{0};
  const FieldElem l{1};
  if (r == 1) {
    return {rows(f, 3, {l, l, o, l, o, o, o, o, l}), rows(f, 3, {o, l, o, l, o, o, o, o, l})};
  }
  if (r == 2) {
    return {rows(f, 3, {l, l, o, o, l, l, l, o, o}), rows(f, 3, {o, l, o, o, o, l, l, o, o})};
  }
  return {rows(f, 3, {l, l, o, o, o, l, l, o, o}), rows(f, 3, {o, l, o, o, l, l, l, o, alpha})};
}

// Odd characteristic: decompositions of diag(2,0,0), diag(2,1,0), diag(2,1,a/2).
std::pair<Matrix, Pair> sl_table_n3_odd(const Field& f, int r, FieldElem alpha) {
  const FieldSpec& s = *f;
  const FieldElem o = s.zero();
  const FieldElem l = s.one();
  const FieldElem m = s.neg(l);
  const FieldElem two = s.add(l, l);
  if (r == 1) {
    const FieldElem diag[] = {two, o, o};
    return {Matrix::diagonal(f, diag),
            {rows(f, 3, {l, o, o, o, o, m, o, l, o}), rows(f, 3, {l, o, o, o, o, l, o, m, o})}};
  }
  if (r == 2) {
    const FieldElem diag[] = {two, l, o};
    return {Matrix::diagonal(f, diag),
            {rows(f, 3, {l, o, o, o, o, m, o, l, o}), rows(f, 3, {l, o, o, o, l, l, o, m, o})}};
  }
  const FieldElem half_alpha = s.div(alpha, two);
  const FieldElem ai = s.inv(alpha);
  const FieldElem diag[] = {two, l, half_alpha};
  return {Matrix::diagonal(f, diag),
          {rows(f, 3, {l, o, o, o, o, ai, o, s.neg(alpha), half_alpha}),
           rows(f, 3, {l, o, o, o, l, s.neg(ai), o, alpha, o})}};
}

Pair sl_pair_for_normal_form(const Matrix& d, int r) {
  const Field& f = d.field();
  const int n = d.n();
  const FieldElem alpha = d(n - 1, n - 1);
  if (n == 2) return sl_pair_n2(f, r, alpha);
  if (n == 3) {
    if (f->p() == 2) return sl_pair_n3_char2(f, r, alpha);
    auto [target, parts] = sl_table_n3_odd(f, r, alpha);
    // d and target share rank and determinant: d = P^-1 target Q^-1.
    auto [p, q] = certify_sl_equivalence(d, target);
    return transport(parts, p, q);
  }
  // n >= 4: D = diag(D1, D2) with D1 of size n-2 (nonzero, D_11 = 1), D2 2x2.
  const Matrix d1 = sub_block(d, 0, n - 2);
  const Matrix d2 = sub_block(d, n - 2, 2);
  auto head = sum_of_two_sl(d1);
  auto tail = d2.is_zero() ? sum_of_sl_zero(f, 2) : sum_of_two_sl(d2);
  return {block_diagonal(head.summands[0], tail.summands[0]),
          block_diagonal(head.summands[1], tail.summands[1])};
}

}  // namespace

std::string_view to_string(DecompositionWitness::Mode mode) {
  switch (mode) {
    case DecompositionWitness::Mode::TwoUnits: return "units";
    case DecompositionWitness::Mode::TwoSL: return "sl";
    case DecompositionWitness::Mode::ThreeSL: return "sl3";
  }
  return "unknown";
}

DecompositionWitness sum_of_two_units(const Matrix& a) {
  const Field& f = a.field();
  const int n = a.n();
  using Mode = DecompositionWitness::Mode;
  if (a.is_zero()) {
    const Matrix id = Matrix::identity(f, n);
    return {Mode::TwoUnits, {id, mat_neg(id)}, a};
  }
  if (f->q() == 2) {
    if (n == 1) throw Error(ErrorCode::TrivialCaseF2, "1 in F_2 is not a sum of two units");
    auto w = sl_normal_form(a);
    auto parts = transport(f2_units_for_normal_form(f, n, w.rank), w.P, w.Q);
    return {Mode::TwoUnits, {std::move(parts.first), std::move(parts.second)}, a};
  }
  // phi(n, q) > 1/2 for q > 2, so some unit U has A - U invertible.
  // Scan units in increasing code order without bounding the ring size.
  const int q = f->q();
  std::vector<FieldElem> digits(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && digits[i].code == q - 1) digits[i++] = FieldElem{0};
    if (i == digits.size()) break;
    digits[i] = FieldElem{static_cast<std::uint16_t>(digits[i].code + 1)};
    Matrix u(f, n, digits);
    if (det(u).is_zero()) continue;
    Matrix rest = a - u;
    if (!det(rest).is_zero()) return {Mode::TwoUnits, {std::move(u), std::move(rest)}, a};
  }
  throw Error(ErrorCode::Unsupported, "no unit decomposition found");
}

DecompositionWitness sum_of_two_sl(const Matrix& a) {
  const Field& f = a.field();
  const int n = a.n();
  if (n < 2) throw Error(ErrorCode::Unsupported, "SL decompositions need n >= 2");
  if (a.is_zero()) {
    if (n % 2 == 0 || f->p() == 2) return sum_of_sl_zero(f, n);
    throw Error(ErrorCode::ZeroNeedsThree,
                "zero needs three SL summands for odd n in odd characteristic");
  }
  auto w = sl_normal_form(a);
  auto parts = transport(sl_pair_for_normal_form(w.D, w.rank), w.P, w.Q);
  return {DecompositionWitness::Mode::TwoSL, {std::move(parts.first), std::move(parts.second)}, a};
}

DecompositionWitness sum_of_sl_zero(const Field& f, int n) {
  if (n < 2) throw Error(ErrorCode::Unsupported, "SL decompositions need n >= 2");
  const Matrix zero(f, n);
  const Matrix s = Matrix::identity(f, n);
  if (n % 2 == 0 || f->p() == 2) {
    return {DecompositionWitness::Mode::TwoSL, {s, mat_neg(s)}, zero};
  }
  auto rest = sum_of_two_sl(mat_neg(s));
  return {DecompositionWitness::Mode::ThreeSL, {s, rest.summands[0], rest.summands[1]}, zero};
}

bool verify_decomposition(const DecompositionWitness& w) {
  using Mode = DecompositionWitness::Mode;
  const std::size_t expected = w.mode == Mode::ThreeSL ? 3 : 2;
  if (w.summands.size() != expected) return false;
  const FieldSpec& f = w.target.spec();
  Matrix sum(w.target.field(), w.target.n());
  for (const auto& s : w.summands) {
    if (s.n() != w.target.n() || !same_field(s.spec(), f)) return false;
    const FieldElem d = det(s);
    if (w.mode == Mode::TwoUnits ? d.is_zero() : d != f.one()) return false;
    sum = sum + s;
  }
  if (w.mode == Mode::ThreeSL && !w.target.is_zero()) return false;
  return sum == w.target;
}

}  // namespace matring
