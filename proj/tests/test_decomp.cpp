#include <gtest/gtest.h>

#include <random>

#include "matring/decomp.hpp"
#include "matring/error.hpp"
#include "matring/normal_form.hpp"

using namespace matring;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

// Independent of verify_decomposition.
void expect_valid(const DecompositionWitness& w, const Matrix& target) {
  const FieldSpec& f = target.spec();
  ASSERT_FALSE(w.summands.empty());
  Matrix sum(target.field(), target.n());
  for (const auto& s : w.summands) {
    sum = sum + s;
    if (w.mode == DecompositionWitness::Mode::TwoUnits) {
      EXPECT_FALSE(det(s).is_zero());
    } else {
      EXPECT_EQ(det(s), f.one());
    }
  }
  EXPECT_EQ(sum, target);
  EXPECT_EQ(w.target, target);
  EXPECT_EQ(w.summands.size(), w.mode == DecompositionWitness::Mode::ThreeSL ? 3U : 2U);
  EXPECT_TRUE(verify_decomposition(w));
}

}  // namespace

TEST(TwoUnits, Zero) {
  for (int q : {2, 3, 5}) {
    const Field f = make_field_for_order(q);
    const auto w = sum_of_two_units(Matrix(f, 2));
    EXPECT_EQ(w.summands[0], Matrix::identity(f, 2));
    EXPECT_EQ(w.summands[1], -Matrix::identity(f, 2));
  }
}

TEST(TwoUnits, RankOneTableOverF2) {
  const Field f = make_field(2, 1);
  const auto a = Matrix::from_codes(f, 2, {1, 0, 0, 0});
  const auto w = sum_of_two_units(a);
  EXPECT_EQ(w.summands[0], Matrix::from_codes(f, 2, {0, 1, 1, 0}));
  EXPECT_EQ(w.summands[1], Matrix::from_codes(f, 2, {1, 1, 1, 0}));
}

TEST(TwoUnits, TrivialCase) {
  const Field f = make_field(2, 1);
  EXPECT_EQ(code_of([&] { sum_of_two_units(Matrix::identity(f, 1)); }), ErrorCode::TrivialCaseF2);
  expect_valid(sum_of_two_units(Matrix(f, 1)), Matrix(f, 1));
}

TEST(TwoUnits, ExhaustiveCoverage) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}}) {
    for_each_matrix(make_field_for_order(q), n, MatrixFilter::all(),
                    [&](const Matrix& a) { expect_valid(sum_of_two_units(a), a); });
  }
}

TEST(TwoUnits, BlockInductionOverF2) {
  std::mt19937_64 rng(4);
  const Field f = make_field(2, 1);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int n : {4, 5, 6}) {
    for (int i = 0; i < 300; ++i) {
      std::vector<int> codes(static_cast<std::size_t>(n * n));
      for (auto& c : codes) c = bit(rng);
      // Bias towards low rank so both cases of the induction are exercised.
      if (i % 3 == 0) {
        for (int c = 0; c < n; ++c) codes[static_cast<std::size_t>((n - 1) * n + c)] = 0;
      }
      const auto a = Matrix::from_codes(f, n, codes);
      expect_valid(sum_of_two_units(a), a);
    }
    expect_valid(sum_of_two_units(Matrix::identity(f, n)), Matrix::identity(f, n));
    expect_valid(sum_of_two_units(Matrix(f, n)), Matrix(f, n));
  }
}

TEST(TwoSL, TableDisplays) {
  for (int q : {3, 5, 7}) {
    const Field f = make_field_for_order(q);
    const auto m1 = f->neg(f->one());
    const auto rank1 = Matrix::from_codes(f, 2, {1, 0, 0, 0});
    const auto w = sum_of_two_sl(rank1);
    EXPECT_EQ(w.summands[0], Matrix(f, 2, {f->zero(), m1, f->one(), f->zero()}));
    EXPECT_EQ(w.summands[1], Matrix(f, 2, {f->one(), f->one(), m1, f->zero()}));
    for (auto a : f->units()) {
      const FieldElem diag[] = {f->one(), a};
      const auto target = Matrix::diagonal(f, diag);
      const auto wd = sum_of_two_sl(target);
      const auto ai = f->inv(a);
      EXPECT_EQ(wd.summands[0], Matrix(f, 2, {f->zero(), ai, f->neg(a), a}));
      EXPECT_EQ(wd.summands[1], Matrix(f, 2, {f->one(), f->neg(ai), a, f->zero()}));
    }
  }
}

TEST(TwoSL, ZeroInEvenDimension) {
  for (int q : {2, 3, 4, 5}) {
    const Field f = make_field_for_order(q);
    const auto w = sum_of_two_sl(Matrix(f, 2));
    expect_valid(w, Matrix(f, 2));
    EXPECT_EQ(w.summands[1], -w.summands[0]);
  }
}

TEST(TwoSL, Errors) {
  const Field f3 = make_field_for_order(3);
  EXPECT_EQ(code_of([&] { sum_of_two_sl(Matrix(f3, 3)); }), ErrorCode::ZeroNeedsThree);
  EXPECT_EQ(code_of([&] { sum_of_two_sl(Matrix::identity(f3, 1)); }), ErrorCode::Unsupported);
}

TEST(TwoSL, ExhaustiveCoverage) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}}) {
    for_each_matrix(make_field_for_order(q), n, MatrixFilter::all(), [&](const Matrix& a) {
      if (!a.is_zero()) expect_valid(sum_of_two_sl(a), a);
    });
  }
}

TEST(TwoSL, BlockRecursion) {
  std::mt19937_64 rng(8);
  for (int q : {2, 3, 5}) {
    const Field f = make_field_for_order(q);
    std::uniform_int_distribution<int> pick(0, q - 1);
    for (int n : {4, 5}) {
      for (int i = 0; i < 100; ++i) {
        std::vector<int> codes(static_cast<std::size_t>(n * n));
        for (auto& c : codes) c = pick(rng);
        const auto a = Matrix::from_codes(f, n, codes);
        if (!a.is_zero()) expect_valid(sum_of_two_sl(a), a);
      }
      // Rank-1 inputs leave zero blocks for the recursion.
      const auto e11 = [&] {
        Matrix m(f, n);
        m.set(0, 0, f->one());
        return m;
      }();
      expect_valid(sum_of_two_sl(e11), e11);
    }
  }
}

TEST(TwoSL, TransportAgreesWithDirectTables) {
  // An SL-equivalent copy of a table entry decomposes through the normal form.
  std::mt19937_64 rng(12);
  const Field f = make_field_for_order(5);
  const auto sl = enumerate_matrices(f, 2, MatrixFilter::det_equals(f->one()));
  std::uniform_int_distribution<std::size_t> pick(0, sl.size() - 1);
  for (auto a : f->units()) {
    const FieldElem diag[] = {f->one(), a};
    const auto d = Matrix::diagonal(f, diag);
    expect_valid(sum_of_two_sl(d), d);
    for (int i = 0; i < 20; ++i) {
      const auto b = sl[pick(rng)] * d * sl[pick(rng)];
      expect_valid(sum_of_two_sl(b), b);
    }
  }
}

TEST(Zero, ParityRule) {
  const std::vector<std::tuple<int, int, std::size_t>> cases = {
      {2, 3, 2}, {3, 2, 2}, {3, 3, 3}, {3, 5, 3}, {4, 3, 2}, {5, 3, 3}, {3, 4, 2}, {2, 2, 2}};
  for (auto [n, q, count] : cases) {
    const Field f = make_field_for_order(q);
    const auto w = sum_of_sl_zero(f, n);
    EXPECT_EQ(w.summands.size(), count) << n << "," << q;
    EXPECT_EQ(w.mode, count == 3 ? DecompositionWitness::Mode::ThreeSL : DecompositionWitness::Mode::TwoSL);
    expect_valid(w, Matrix(f, n));
  }
}

TEST(Zero, NoTwoSummandsInMat3F3) {
  const Field f = make_field_for_order(3);
  const auto sl = enumerate_matrices(f, 3, MatrixFilter::det_equals(f->one()));
  EXPECT_EQ(sl.size(), 5616U);
  for (const auto& s : sl) ASSERT_NE(det(-s), f->one());
}

TEST(Verify, RejectsTamperedWitnesses) {
  const Field f = make_field_for_order(3);
  const auto a = Matrix::from_codes(f, 2, {1, 2, 0, 1});
  auto w = sum_of_two_units(a);
  EXPECT_TRUE(verify_decomposition(w));
  auto zeroed = w;
  zeroed.summands[0] = Matrix(f, 2);
  EXPECT_FALSE(verify_decomposition(zeroed));

  // Sums correctly but uses a singular summand.
  const auto singular = Matrix::from_codes(f, 2, {1, 0, 0, 0});
  DecompositionWitness bad{DecompositionWitness::Mode::TwoUnits, {singular, a - singular}, a};
  EXPECT_FALSE(verify_decomposition(bad));

  auto sl = sum_of_two_sl(a);
  sl.mode = DecompositionWitness::Mode::ThreeSL;
  EXPECT_FALSE(verify_decomposition(sl));
}
