#pragma once

// Enumeration kernels over flat matrix data. Every kernel has a serial
// reference in `kernels::serial` and an OpenMP version in `kernels::omp`;
// both return identical results (all reductions are over integers).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "matring/gf.hpp"
#include "matring/matrix.hpp"

namespace matring::kernels {

/// Rank and determinant code of a flat n x n matrix.
std::pair<int, std::uint8_t> rank_det(const FieldSpec& f, std::span<const std::uint8_t> m, int n);

/// Tr(a * s) for flat n x n matrices.
std::uint8_t trace_of_product(const FieldSpec& f, std::span<const std::uint8_t> a,
                              std::span<const std::uint8_t> s, int n);

/// Counts over a ring code range: by_rank[r] and by_det[code] (det 0 included).
struct RingCensus {
  std::vector<std::uint64_t> by_rank;
  std::vector<std::uint64_t> by_det;
  friend bool operator==(const RingCensus&, const RingCensus&) = default;
};

/// Common-neighbour statistics over ordered pairs of distinct vertices.
struct PairStats {
  std::uint64_t adjacent_pairs = 0;
  std::uint64_t adjacent_common_sum = 0;
  std::uint64_t adjacent_min = UINT64_MAX;
  std::uint64_t adjacent_max = 0;
  std::uint64_t nonadjacent_pairs = 0;
  std::uint64_t nonadjacent_common_sum = 0;
  std::uint64_t nonadjacent_min = UINT64_MAX;
  std::uint64_t nonadjacent_max = 0;
  friend bool operator==(const PairStats&, const PairStats&) = default;
};

/// Dense adjacency rows as bitsets: row u occupies `words` 64-bit words.
struct AdjacencyBits {
  std::size_t vertices = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  bool test(std::size_t u, std::size_t v) const {
    return (bits[u * words + v / 64] >> (v % 64)) & 1U;
  }
};

/// Vertex u -> u + s for every s in `connection`, vertices indexed by code.
AdjacencyBits cayley_adjacency(const FieldSpec& f, const MatrixSet& connection);

namespace serial {

/// hist[t] = #{ s in S : tr_{F_q/F_p}(Tr(a s)) = t }, t in [0, p).
std::vector<std::uint64_t> trace_histogram(const FieldSpec& f, std::span<const std::uint8_t> a,
                                           const MatrixSet& s);
RingCensus ring_census(const FieldSpec& f, int n, std::uint64_t lo, std::uint64_t hi);
PairStats common_neighbor_scan(const AdjacencyBits& adj);
/// First (i, j) in lexicographic order with det(x_i - y_j) == alpha (2 x 2 only).
std::optional<std::pair<std::size_t, std::size_t>> first_det_difference(
    const FieldSpec& f, const MatrixSet& x, const MatrixSet& y, std::uint8_t alpha);
/// #{(i, j) : s_i + s_j == 0} by comparing entry sums.
std::uint64_t zero_sum_pairs(const FieldSpec& f, const MatrixSet& s);

}  // namespace serial

namespace omp {

std::vector<std::uint64_t> trace_histogram(const FieldSpec& f, std::span<const std::uint8_t> a,
                                           const MatrixSet& s);
RingCensus ring_census(const FieldSpec& f, int n, std::uint64_t lo, std::uint64_t hi);
PairStats common_neighbor_scan(const AdjacencyBits& adj);
std::optional<std::pair<std::size_t, std::size_t>> first_det_difference(
    const FieldSpec& f, const MatrixSet& x, const MatrixSet& y, std::uint8_t alpha);
std::uint64_t zero_sum_pairs(const FieldSpec& f, const MatrixSet& s);

}  // namespace omp

}  // namespace matring::kernels
