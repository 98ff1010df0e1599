#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "matring/error.hpp"
#include "matring/sumprod.hpp"
#include "oracles.hpp"

using namespace matring;

namespace {

oracle::PolyField oracle_for(const FieldSpec& f) {
  return {f.p(), f.k(), std::vector<int>(f.irreducible().begin(), f.irreducible().end())};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

std::set<int> quadruple_loop(const oracle::PolyField& o, const SubsetOfField& a, const SubsetOfField& b,
                             const SubsetOfField& c, const SubsetOfField& d) {
  std::set<int> out;
  for (auto x : a.elements()) {
    for (auto y : b.elements()) {
      for (auto z : c.elements()) {
        for (auto w : d.elements()) out.insert(o.mul(o.sub(x.code, y.code), o.sub(z.code, w.code)));
      }
    }
  }
  return out;
}

std::set<int> codes(const std::vector<FieldElem>& elems) {
  std::set<int> out;
  for (auto e : elems) out.insert(e.code);
  return out;
}

}  // namespace

TEST(GapThreshold, Examples) {
  const auto t3 = gap_threshold(make_field_for_order(3));
  EXPECT_NEAR(t3.weil, 2 * 27 * std::sqrt(3.0) / 2, 1e-9);
  EXPECT_NEAR(t3.weil, 46.765, 1e-3);
  EXPECT_NEAR(t3.proof_nstar, 35.074, 1e-3);
  EXPECT_NEAR(gap_threshold(make_field_for_order(2)).weil, 22.627, 1e-3);
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const auto t = gap_threshold(make_field_for_order(q));
    EXPECT_LE(t.exact, t.proof_nstar + 1e-9) << q;
    EXPECT_LE(t.proof_nstar, t.weil) << q;
  }
}

TEST(DetWitness, NonExample) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const Field f = make_field_for_order(q);
    const auto x = singular_row_subset(f);
    EXPECT_EQ(x.size(), static_cast<std::size_t>(q * q));
    for (auto a : f->units()) EXPECT_FALSE(det_difference_witness(x, x, a).has_value());
    const double qq = q;
    EXPECT_LT(qq * qq, 2 * qq * qq * qq * std::sqrt(qq) / (qq - 1));
  }
}

TEST(DetWitness, WholeRingOverF2IsFirstLexicographic) {
  const Field f = make_field_for_order(2);
  const auto o = oracle_for(*f);
  std::vector<std::uint64_t> all(16);
  for (std::uint64_t i = 0; i < 16; ++i) all[i] = i;
  const SubsetOfRing x(f, 2, all);
  const auto w = det_difference_witness(x, x, f->one());
  ASSERT_TRUE(w.has_value());
  // Brute force in (code M, code N) order.
  std::pair<std::uint64_t, std::uint64_t> first{99, 99};
  for (std::uint64_t m = 0; m < 16 && first.first == 99; ++m) {
    for (std::uint64_t n = 0; n < 16; ++n) {
      const auto a = oracle::from_code(o, m, 2), b = oracle::from_code(o, n, 2);
      oracle::Mat d;
      for (std::size_t i = 0; i < 4; ++i) d.push_back(o.sub(a[i], b[i]));
      if (oracle::leibniz_det(o, d, 2) == 1) {
        first = {m, n};
        break;
      }
    }
  }
  EXPECT_EQ(w->m.code(), first.first);
  EXPECT_EQ(w->n.code(), first.second);
  EXPECT_EQ(det(w->m - w->n), f->one());
}

TEST(DetWitness, RandomSubsetsAboveProofThreshold) {
  const Field f = make_field_for_order(3);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_ring_subset(f, 2, 36, rng);
    const auto y = random_ring_subset(f, 2, 36, rng);
    for (auto a : f->units()) ASSERT_TRUE(det_difference_witness(x, y, a).has_value()) << trial;
  }
}

TEST(DetWitness, SoundAboveExactThreshold) {
  for (int q : {2, 3}) {
    const Field f = make_field_for_order(q);
    const auto size = static_cast<std::size_t>(std::floor(gap_threshold(f).exact)) + 1;
    std::mt19937_64 rng(static_cast<std::uint64_t>(q) * 7919);
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = random_ring_subset(f, 2, size, rng);
      const auto y = random_ring_subset(f, 2, size, rng);
      for (auto a : f->units()) ASSERT_TRUE(det_difference_witness(x, y, a).has_value());
    }
  }
}

TEST(DetWitness, Errors) {
  const Field f3 = make_field_for_order(3);
  const SubsetOfRing x3(f3, 3, {0, 1, 2});
  const SubsetOfRing x2(f3, 2, {0, 1});
  EXPECT_EQ(code_of([&] { det_difference_witness(x3, x3, f3->one()); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { det_difference_witness(x2, x2, f3->zero()); }), ErrorCode::ZeroAlpha);
  EXPECT_EQ(code_of([&] { SubsetOfRing(f3, 2, {81}); }), ErrorCode::FieldMismatch);
  const Field f16 = make_field_for_order(16);
  std::vector<std::uint64_t> big(20000);
  for (std::uint64_t i = 0; i < big.size(); ++i) big[i] = i;
  const SubsetOfRing huge(f16, 2, big);
  EXPECT_EQ(code_of([&] { det_difference_witness(huge, huge, f16->one()); }), ErrorCode::TooLarge);
}

TEST(Subsets, SortedAndDeduplicated) {
  const Field f = make_field_for_order(5);
  const SubsetOfRing x(f, 2, {7, 3, 7, 1});
  EXPECT_EQ(x.codes(), (std::vector<std::uint64_t>{1, 3, 7}));
  const SubsetOfField a(f, {4, 0, 4});
  ASSERT_EQ(a.size(), 2U);
  EXPECT_EQ(a.elements()[0].code, 0);
  EXPECT_THROW(SubsetOfField(f, {5}), Error);
}

TEST(SumProd, Examples) {
  for (int q : {2, 3, 4, 5, 9}) {
    const Field f = make_field_for_order(q);
    const auto all = SubsetOfField::whole(f);
    EXPECT_TRUE(sumprod_cover(all, all, all, all).covers_all);
  }
  const Field f9 = make_field_for_order(9);
  for (int missing = 0; missing < 9; ++missing) {
    std::vector<int> c;
    for (int i = 0; i < 9; ++i) {
      if (i != missing) c.push_back(i);
    }
    const SubsetOfField a(f9, c);
    const auto r = sumprod_cover(a, a, a, a);
    EXPECT_TRUE(r.covers_all);
    EXPECT_TRUE(r.single_set_hypothesis);
    EXPECT_FALSE(r.single_set_vacuous);
    EXPECT_NEAR(r.single_set_threshold, 7.794, 1e-3);
  }
  const Field f3 = make_field_for_order(3);
  const SubsetOfField zero(f3, {0});
  const auto r = sumprod_cover(zero, zero, zero, zero);
  EXPECT_EQ(codes(r.set), (std::set<int>{0}));
  EXPECT_FALSE(r.covers_all);
  EXPECT_FALSE(r.single_set_hypothesis);
  EXPECT_FALSE(r.four_set_hypothesis);
}

TEST(SumProd, VacuousHypothesis) {
  const Field f5 = make_field_for_order(5);
  const auto all = SubsetOfField::whole(f5);
  const auto r = sumprod_cover(all, all, all, all);
  EXPECT_TRUE(r.single_set_vacuous);
  EXPECT_GT(r.single_set_threshold, 5.0);
  EXPECT_FALSE(r.single_set_hypothesis);
}

TEST(SumProd, MatchesQuadrupleLoop) {
  std::mt19937_64 rng(31);
  for (int q : {3, 4, 5, 7, 8, 9}) {
    const Field f = make_field_for_order(q);
    const auto o = oracle_for(*f);
    std::uniform_int_distribution<std::size_t> size(1, static_cast<std::size_t>(q));
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_field_subset(f, size(rng), rng);
      const auto b = random_field_subset(f, size(rng), rng);
      const auto c = random_field_subset(f, size(rng), rng);
      const auto d = random_field_subset(f, size(rng), rng);
      const auto r = sumprod_cover(a, b, c, d);
      const auto want = quadruple_loop(o, a, b, c, d);
      EXPECT_EQ(codes(r.set), want);
      EXPECT_EQ(r.covers_all, static_cast<int>(want.size()) == q);
      // Whenever the four-set hypothesis holds, the cover is complete.
      if (r.four_set_hypothesis) EXPECT_TRUE(r.covers_all);
    }
  }
}

TEST(SumProd, FourSetCorollaryOverF9) {
  const Field f = make_field_for_order(9);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(8, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_field_subset(f, size(rng), rng);
    const auto b = random_field_subset(f, size(rng), rng);
    const auto c = random_field_subset(f, size(rng), rng);
    const auto d = random_field_subset(f, size(rng), rng);
    const auto r = sumprod_cover(a, b, c, d);
    ASSERT_TRUE(r.four_set_hypothesis);
    ASSERT_TRUE(r.covers_all);
  }
}

TEST(Embed, Examples) {
  const Field f2 = make_field_for_order(2);
  const auto all2 = SubsetOfField::whole(f2);
  EXPECT_EQ(embed_field_subsets(all2, all2).size(), 8U);

  const Field f3 = make_field_for_order(3);
  const SubsetOfField zero(f3, {0});
  const auto x = embed_field_subsets(zero, zero);
  ASSERT_EQ(x.size(), 3U);
  for (auto c : x.codes()) EXPECT_TRUE(det(Matrix::from_code(f3, 2, c)).is_zero());

  const auto all3 = SubsetOfField::whole(f3);
  const auto x3 = embed_field_subsets(all3, all3);
  EXPECT_EQ(x3.size(), 27U);
  for (auto a : f3->units()) EXPECT_TRUE(det_difference_witness(x3, x3, a).has_value());
  for (auto c : x3.codes()) EXPECT_TRUE(Matrix::from_code(f3, 2, c)(1, 0).is_zero());
}

TEST(Embed, RoutesAgree) {
  std::mt19937_64 rng(55);
  for (int q : {3, 4, 5}) {
    const Field f = make_field_for_order(q);
    std::uniform_int_distribution<std::size_t> size(1, static_cast<std::size_t>(q));
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_field_subset(f, size(rng), rng);
      const auto b = random_field_subset(f, size(rng), rng);
      const auto c = random_field_subset(f, size(rng), rng);
      const auto d = random_field_subset(f, size(rng), rng);
      const auto in_set = codes(sumprod_cover(a, b, c, d).set);
      const auto x = embed_field_subsets(a, c);
      const auto y = embed_field_subsets(b, d);
      for (auto alpha : f->units()) {
        EXPECT_EQ(in_set.contains(alpha.code), det_difference_witness(x, y, alpha).has_value());
      }
    }
  }
}

TEST(CodeFiles, Parsing) {
  EXPECT_EQ(parse_code_list("# header\n3\n\n 1 # one\n2\r\n"), (std::vector<std::uint64_t>{3, 1, 2}));
  EXPECT_TRUE(parse_code_list("").empty());
  EXPECT_EQ(code_of([] { parse_code_list("1\nx2\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_code_list("-1\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { read_code_file("/nonexistent/path"); }), ErrorCode::ParseError);

  const std::string path = ::testing::TempDir() + "codes.txt";
  {
    std::ofstream out(path);
    out << "# A\n0\n5\n";
  }
  EXPECT_EQ(read_code_file(path), (std::vector<std::uint64_t>{0, 5}));
  std::remove(path.c_str());
}

TEST(RandomSubsets, DeterministicPerSeed) {
  const Field f = make_field_for_order(3);
  std::mt19937_64 r1(5), r2(5);
  EXPECT_EQ(random_ring_subset(f, 2, 20, r1).codes(), random_ring_subset(f, 2, 20, r2).codes());
  const auto s = random_ring_subset(f, 2, 20, r1);
  EXPECT_EQ(s.size(), 20U);
  EXPECT_THROW(random_field_subset(f, 4, r1), Error);
}
