#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "matring/kernels.hpp"
#include "matring/parallel.hpp"
#include "oracles.hpp"

using namespace matring;

namespace {

// Runs the body once per worker count; oversubscription is fine for correctness.
template <class Fn>
void for_thread_counts(Fn&& fn) {
  for (const char* threads : {"1", "3", "4"}) {
    setenv("MATRING_THREADS", threads, 1);
    fn();
  }
  unsetenv("MATRING_THREADS");
}

oracle::PolyField oracle_for(const FieldSpec& f) {
  return {f.p(), f.k(), std::vector<int>(f.irreducible().begin(), f.irreducible().end())};
}

}  // namespace

TEST(Parallel, WorkerCountHonoursEnv) {
  setenv("MATRING_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), openmp_enabled() ? 3 : 1);
  setenv("MATRING_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1);
  unsetenv("MATRING_THREADS");
}

TEST(Kernels, RankDetMatchesOracle) {
  const Field f = make_field_for_order(4);
  const auto o = oracle_for(*f);
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto m = oracle::from_code(o, code, 2);
    std::vector<std::uint8_t> flat(m.begin(), m.end());
    const auto [r, d] = kernels::rank_det(*f, flat, 2);
    EXPECT_EQ(d, oracle::leibniz_det(o, m, 2));
    EXPECT_EQ(r, oracle::minor_rank(o, m, 2));
  }
}

TEST(Kernels, TraceHistogramSerialEqualsOmp) {
  for (int q : {2, 3, 4, 5, 9}) {
    const Field f = make_field_for_order(q);
    const auto s = collect_matrix_set(f, 2, MatrixFilter::det_equals(f->one()));
    for (std::uint64_t code : {0ULL, 1ULL, 5ULL, static_cast<unsigned long long>(q * q + 2)}) {
      const auto a = Matrix::from_code(f, 2, code);
      std::vector<std::uint8_t> flat;
      for (auto e : a.entries()) flat.push_back(static_cast<std::uint8_t>(e.code));
      const auto ref = kernels::serial::trace_histogram(*f, flat, s);
      std::uint64_t total = 0;
      for (auto c : ref) total += c;
      EXPECT_EQ(total, s.size());
      for_thread_counts([&] { EXPECT_EQ(kernels::omp::trace_histogram(*f, flat, s), ref); });
    }
  }
}

TEST(Kernels, RingCensusSerialEqualsOmp) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 7}, {2, 3}, {2, 5}, {3, 2}, {3, 3}}) {
    const Field f = make_field_for_order(q);
    const auto size = enumerable_ring_size(n, *f);
    const auto ref = kernels::serial::ring_census(*f, n, 0, size);
    for_thread_counts([&] { EXPECT_EQ(kernels::omp::ring_census(*f, n, 0, size), ref); });
    // Sub-ranges add up.
    auto lo = kernels::serial::ring_census(*f, n, 0, size / 3);
    const auto hi = kernels::serial::ring_census(*f, n, size / 3, size);
    for (std::size_t i = 0; i < lo.by_rank.size(); ++i) lo.by_rank[i] += hi.by_rank[i];
    for (std::size_t i = 0; i < lo.by_det.size(); ++i) lo.by_det[i] += hi.by_det[i];
    EXPECT_EQ(lo, ref);
  }
}

TEST(Kernels, CommonNeighbourScanSerialEqualsOmp) {
  for (int q : {2, 3}) {
    const Field f = make_field_for_order(q);
    for (auto filter : {MatrixFilter::invertible(), MatrixFilter::det_equals(f->one())}) {
      const auto s = collect_matrix_set(f, 2, filter);
      const auto adj = kernels::cayley_adjacency(*f, s);
      const auto ref = kernels::serial::common_neighbor_scan(adj);
      EXPECT_EQ(ref.adjacent_pairs + ref.nonadjacent_pairs, adj.vertices * (adj.vertices - 1));
      for_thread_counts([&] { EXPECT_EQ(kernels::omp::common_neighbor_scan(adj), ref); });
    }
  }
}

TEST(Kernels, AdjacencyMatchesDefinition) {
  const Field f = make_field_for_order(3);
  const auto o = oracle_for(*f);
  const auto s = collect_matrix_set(f, 2, MatrixFilter::det_equals(f->one()));
  const auto adj = kernels::cayley_adjacency(*f, s);
  ASSERT_EQ(adj.vertices, 81U);
  for (std::uint64_t u = 0; u < 81; ++u) {
    for (std::uint64_t v = 0; v < 81; ++v) {
      oracle::Mat diff;
      const auto mu = oracle::from_code(o, u, 2), mv = oracle::from_code(o, v, 2);
      for (std::size_t i = 0; i < 4; ++i) diff.push_back(o.sub(mv[i], mu[i]));
      EXPECT_EQ(adj.test(u, v), oracle::leibniz_det(o, diff, 2) == 1);
    }
  }
}

TEST(Kernels, FirstDetDifferenceSerialEqualsOmp) {
  std::mt19937_64 rng(17);
  for (int q : {2, 3, 4}) {
    const Field f = make_field_for_order(q);
    const auto all = collect_matrix_set(f, 2, MatrixFilter::all());
    for (int trial = 0; trial < 20; ++trial) {
      // Random sub-sets of the ring by code.
      MatrixSet x{2, q, {}, {}}, y{2, q, {}, {}};
      std::bernoulli_distribution keep(0.1);
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (auto* set : {&x, &y}) {
          if (keep(rng)) {
            set->codes.push_back(all.codes[i]);
            const auto e = all.at(i);
            set->entries.insert(set->entries.end(), e.begin(), e.end());
          }
        }
      }
      for (int a = 1; a < q; ++a) {
        const auto ref = kernels::serial::first_det_difference(*f, x, y, static_cast<std::uint8_t>(a));
        for_thread_counts([&] {
          EXPECT_EQ(kernels::omp::first_det_difference(*f, x, y, static_cast<std::uint8_t>(a)), ref);
        });
      }
    }
  }
}

TEST(Kernels, ZeroSumPairsSerialEqualsOmp) {
  for (int q : {2, 3, 4, 5}) {
    const Field f = make_field_for_order(q);
    for (int n : {2, 3}) {
      if (n == 3 && q > 3) continue;
      const auto s = collect_matrix_set(f, n, MatrixFilter::det_equals(f->one()));
      const auto ref = kernels::serial::zero_sum_pairs(*f, s);
      // -S == S exactly when n is even or p == 2.
      EXPECT_EQ(ref == s.size(), n % 2 == 0 || f->p() == 2) << n << "," << q;
      for_thread_counts([&] { EXPECT_EQ(kernels::omp::zero_sum_pairs(*f, s), ref); });
    }
  }
}
