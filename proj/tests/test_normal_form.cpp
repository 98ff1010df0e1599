#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "matring/error.hpp"
#include "matring/normal_form.hpp"
#include "oracles.hpp"

using namespace matring;

namespace {

oracle::PolyField oracle_for(const FieldSpec& f) {
  return {f.p(), f.k(), std::vector<int>(f.irreducible().begin(), f.irreducible().end())};
}

oracle::Mat codes_of(const Matrix& m) {
  oracle::Mat out;
  for (auto e : m.entries()) out.push_back(e.code);
  return out;
}

Matrix random_matrix(const Field& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, f->q() - 1);
  std::vector<int> codes(static_cast<std::size_t>(n * n));
  for (auto& c : codes) c = pick(rng);
  return Matrix::from_codes(f, n, codes);
}

void expect_witness(const Matrix& a, const NormalFormWitness& w) {
  const FieldSpec& f = a.spec();
  const int r = rank(a);
  EXPECT_EQ(w.rank, r);
  EXPECT_EQ(det(w.P), f.one());
  EXPECT_EQ(det(w.Q), f.one());
  EXPECT_EQ(w.P * a * w.Q, w.D);
  for (int i = 0; i < a.n(); ++i) {
    for (int j = 0; j < a.n(); ++j) {
      FieldElem want = f.zero();
      if (i == j && i < r) want = (i == a.n() - 1 && r == a.n()) ? det(a) : f.one();
      EXPECT_EQ(w.D(i, j), want) << to_literal(a) << " at " << i << "," << j;
    }
  }
  EXPECT_TRUE(verify_normal_form(a, w));
}

}  // namespace

TEST(NormalForm, ZeroMatrix) {
  for (int n = 1; n <= 4; ++n) {
    const Field f = make_field_for_order(3);
    const Matrix zero(f, n);
    const auto w = sl_normal_form(zero);
    EXPECT_EQ(w.D, zero);
    EXPECT_EQ(w.P, Matrix::identity(f, n));
    EXPECT_EQ(w.Q, Matrix::identity(f, n));
    EXPECT_TRUE(w.ops.empty());
  }
}

TEST(NormalForm, IdentityAndOneByOne) {
  const Field f = make_field_for_order(5);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(sl_normal_form(Matrix::identity(f, n)).D, Matrix::identity(f, n));
  const auto a = Matrix::from_codes(f, 1, {3});
  const auto w = sl_normal_form(a);
  EXPECT_EQ(w.D, a);
  EXPECT_TRUE(w.ops.empty());
}

TEST(NormalForm, SpecExampleOverF3) {
  const Field f = make_field_for_order(3);
  const auto a = Matrix::from_codes(f, 2, {0, 2, 1, 1});
  EXPECT_EQ(det(a).code, 1);
  const auto w = sl_normal_form(a);
  EXPECT_EQ(w.D, Matrix::identity(f, 2));
  expect_witness(a, w);
}

TEST(NormalForm, ExhaustiveSmall) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    for_each_matrix(make_field_for_order(q), n, MatrixFilter::all(),
                    [&](const Matrix& a) { expect_witness(a, sl_normal_form(a)); });
  }
}

TEST(NormalForm, ReplayAndOpDeterminants) {
  std::mt19937_64 rng(21);
  for (int n : {2, 3}) {
    for (int q : {2, 3, 5}) {
      const Field f = make_field_for_order(q);
      for (int i = 0; i < 1000; ++i) {
        const Matrix a = random_matrix(f, n, rng);
        const auto w = sl_normal_form(a);
        // Row ops accumulate on the left and column ops on the right.
        Matrix replay = a;
        for (const auto& op : w.ops) {
          EXPECT_EQ(det(op.matrix(f, n)), f->one());
          op.apply(replay);
        }
        ASSERT_EQ(replay, w.D) << to_literal(a);
      }
    }
  }
}

TEST(NormalForm, Idempotent) {
  std::mt19937_64 rng(5);
  for (int q : {2, 3, 4, 5, 7}) {
    const Field f = make_field_for_order(q);
    for (int i = 0; i < 200; ++i) {
      const auto d = sl_normal_form(random_matrix(f, 3, rng)).D;
      EXPECT_EQ(sl_normal_form(d).D, d);
    }
  }
}

TEST(NormalForm, LexicographicPivot) {
  // a11 = 0; the first nonzero entry in row-major order is (0, 1).
  const Field f = make_field_for_order(5);
  const auto w = sl_normal_form(Matrix::from_codes(f, 2, {0, 3, 2, 0}));
  ASSERT_FALSE(w.ops.empty());
  EXPECT_EQ(w.ops.front().side, ElementaryOp::Side::Column);
  EXPECT_EQ(w.ops.front().i, 1);
  EXPECT_EQ(w.ops.front().j, 0);
}

TEST(Equivalence, GlExamples) {
  const Field f2 = make_field(2, 1);
  EXPECT_TRUE(is_gl_equivalent(Matrix::identity(f2, 2), Matrix::from_codes(f2, 2, {1, 1, 1, 0})));
  EXPECT_FALSE(is_gl_equivalent(Matrix(f2, 2), Matrix::identity(f2, 2)));
  const Field f3 = make_field(3, 1);
  std::map<int, int> sizes;
  for_each_matrix(f3, 2, MatrixFilter::all(), [&](const Matrix& m) { ++sizes[rank(m)]; });
  EXPECT_EQ(sizes, (std::map<int, int>{{0, 1}, {1, 32}, {2, 48}}));
}

TEST(Equivalence, SlExamples) {
  const Field f3 = make_field(3, 1);
  const FieldElem d12[] = {FieldElem(1), FieldElem(2)};
  const FieldElem d21[] = {FieldElem(2), FieldElem(1)};
  const FieldElem d11[] = {FieldElem(1), FieldElem(1)};
  EXPECT_TRUE(is_sl_equivalent(Matrix::diagonal(f3, d12), Matrix::diagonal(f3, d21)));
  EXPECT_FALSE(is_sl_equivalent(Matrix::diagonal(f3, d11), Matrix::diagonal(f3, d12)));

  // Classes: rank 0, rank 1, det 1, det 2 with sizes 1, 32, 24, 24.
  const auto all = enumerate_matrices(f3, 2, MatrixFilter::all());
  std::vector<std::size_t> class_sizes;
  std::vector<bool> seen(all.size(), false);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (seen[i]) continue;
    std::size_t size = 0;
    for (std::size_t j = i; j < all.size(); ++j) {
      if (!seen[j] && is_sl_equivalent(all[i], all[j])) {
        seen[j] = true;
        ++size;
      }
    }
    class_sizes.push_back(size);
  }
  std::sort(class_sizes.begin(), class_sizes.end());
  EXPECT_EQ(class_sizes, (std::vector<std::size_t>{1, 24, 24, 32}));
}

TEST(Equivalence, Errors) {
  const Field f3 = make_field(3, 1);
  try {
    is_sl_equivalent(Matrix(f3, 2), Matrix(f3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  try {
    certify_sl_equivalence(Matrix::identity(f3, 2), Matrix(f3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEquivalent);
  }
}

TEST(Certify, Examples) {
  const Field f3 = make_field(3, 1);
  const FieldElem d12[] = {FieldElem(1), FieldElem(2)};
  const auto a = Matrix::diagonal(f3, d12);
  const auto [p0, q0] = certify_sl_equivalence(a, a);
  EXPECT_EQ(p0 * a * q0, a);

  const auto swap = Matrix::from_codes(f3, 2, {0, 1, 1, 0});
  const auto b = swap * a * swap;
  const auto [p, q] = certify_sl_equivalence(a, b);
  EXPECT_EQ(p * a * q, b);
  EXPECT_EQ(det(p).code, 1);
  EXPECT_EQ(det(q).code, 1);
}

TEST(Certify, RandomPairsOverF5) {
  std::mt19937_64 rng(99);
  const Field f = make_field_for_order(5);
  const auto sl = enumerate_matrices(f, 2, MatrixFilter::det_equals(f->one()));
  std::uniform_int_distribution<std::size_t> pick(0, sl.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const Matrix a = random_matrix(f, 2, rng);
    const Matrix b = sl[pick(rng)] * a * sl[pick(rng)];
    const auto [p, q] = certify_sl_equivalence(a, b);
    ASSERT_EQ(p * a * q, b);
    ASSERT_EQ(det(p), f->one());
    ASSERT_EQ(det(q), f->one());
  }
}

TEST(Certify, MatchesBruteForceOrbits) {
  for (int q : {2, 3}) {
    const Field f = make_field_for_order(q);
    const auto o = oracle_for(*f);
    const auto sl = oracle::det_slice(o, 2, 1);
    const auto all = enumerate_matrices(f, 2, MatrixFilter::all());
    for (const auto& a : all) {
      std::set<oracle::Mat> orbit;
      for (const auto& p : sl) {
        const auto pa = oracle::matmul(o, p, codes_of(a), 2);
        for (const auto& qm : sl) orbit.insert(oracle::matmul(o, pa, qm, 2));
      }
      for (const auto& b : all) {
        const bool brute = orbit.contains(codes_of(b));
        ASSERT_EQ(is_sl_equivalent(a, b), brute) << to_literal(a) << " " << to_literal(b);
        if (brute) {
          const auto [p, qm] = certify_sl_equivalence(a, b);
          ASSERT_EQ(p * a * qm, b);
        } else {
          EXPECT_THROW(certify_sl_equivalence(a, b), Error);
        }
      }
    }
  }
}

TEST(ElementaryOp, MatricesHaveDetOne) {
  const Field f = make_field_for_order(7);
  for (auto side : {ElementaryOp::Side::Row, ElementaryOp::Side::Column}) {
    for (int s = 1; s < 7; ++s) {
      const ElementaryOp t1{ElementaryOp::Kind::Type1, side, 0, 2, FieldElem(static_cast<std::uint16_t>(s))};
      const ElementaryOp t2{ElementaryOp::Kind::Type2, side, 1, 2, FieldElem(static_cast<std::uint16_t>(s))};
      EXPECT_EQ(det(t1.matrix(f, 3)), f->one());
      EXPECT_EQ(det(t2.matrix(f, 3)), f->one());
    }
  }
}

TEST(Canonical, Shape) {
  const Field f = make_field_for_order(5);
  const auto d = canonical_normal_form(f, 3, 3, FieldElem(4));
  const FieldElem want[] = {FieldElem(1), FieldElem(1), FieldElem(4)};
  EXPECT_EQ(d, Matrix::diagonal(f, want));
  const FieldElem rank1[] = {FieldElem(1), FieldElem(0), FieldElem(0)};
  EXPECT_EQ(canonical_normal_form(f, 3, 1, FieldElem(1)), Matrix::diagonal(f, rank1));
}
