#include "matring/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "matring/error.hpp"
#include "matring/parallel.hpp"

namespace matring::kernels {
namespace {

constexpr int kMaxFlatDim = 8;

struct Tables {
  const std::uint8_t* add;
  const std::uint8_t* mul;
  const std::uint8_t* neg;
  const std::uint8_t* tr;
  std::size_t q;

  explicit Tables(const FieldSpec& f)
      : add(f.add_table().data()),
        mul(f.mul_table().data()),
        neg(f.neg_table().data()),
        tr(f.trace_table().data()),
        q(static_cast<std::size_t>(f.q())) {}

  std::uint8_t plus(std::uint8_t a, std::uint8_t b) const { return add[a * q + b]; }
  std::uint8_t times(std::uint8_t a, std::uint8_t b) const { return mul[a * q + b]; }
};

void decode(std::uint64_t code, std::size_t q, std::span<std::uint8_t> out) {
  for (auto& d : out) {
    d = static_cast<std::uint8_t>(code % q);
    code /= q;
  }
}

std::uint8_t det2_of_difference(const Tables& t, std::span<const std::uint8_t> x,
                                std::span<const std::uint8_t> y) {
  const auto a = t.plus(x[0], t.neg[y[0]]);
  const auto b = t.plus(x[1], t.neg[y[1]]);
  const auto c = t.plus(x[2], t.neg[y[2]]);
  const auto d = t.plus(x[3], t.neg[y[3]]);
  return t.plus(t.times(a, d), t.neg[t.times(b, c)]);
}

bool sums_to_zero(const Tables& t, std::span<const std::uint8_t> x,
                  std::span<const std::uint8_t> y) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (t.plus(x[k], y[k]) != 0) return false;
  }
  return true;
}

void require_dim(int n) {
  if (n < 1 || n > kMaxFlatDim) throw Error(ErrorCode::Unsupported, "flat kernels need n <= 8");
}

void merge(PairStats& into, const PairStats& from) {
  into.adjacent_pairs += from.adjacent_pairs;
  into.adjacent_common_sum += from.adjacent_common_sum;
  into.adjacent_min = std::min(into.adjacent_min, from.adjacent_min);
  into.adjacent_max = std::max(into.adjacent_max, from.adjacent_max);
  into.nonadjacent_pairs += from.nonadjacent_pairs;
  into.nonadjacent_common_sum += from.nonadjacent_common_sum;
  into.nonadjacent_min = std::min(into.nonadjacent_min, from.nonadjacent_min);
  into.nonadjacent_max = std::max(into.nonadjacent_max, from.nonadjacent_max);
}

void scan_row(const AdjacencyBits& adj, std::size_t u, PairStats& stats) {
  const std::uint64_t* ru = adj.bits.data() + u * adj.words;
  for (std::size_t v = 0; v < adj.vertices; ++v) {
    if (v == u) continue;
    const std::uint64_t* rv = adj.bits.data() + v * adj.words;
    std::uint64_t common = 0;
    for (std::size_t w = 0; w < adj.words; ++w) common += std::popcount(ru[w] & rv[w]);
    if (adj.test(u, v)) {
      ++stats.adjacent_pairs;
      stats.adjacent_common_sum += common;
      stats.adjacent_min = std::min(stats.adjacent_min, common);
      stats.adjacent_max = std::max(stats.adjacent_max, common);
    } else {
      ++stats.nonadjacent_pairs;
      stats.nonadjacent_common_sum += common;
      stats.nonadjacent_min = std::min(stats.nonadjacent_min, common);
      stats.nonadjacent_max = std::max(stats.nonadjacent_max, common);
    }
  }
}

void census_one(const FieldSpec& f, int n, std::uint64_t code, RingCensus& c) {
  std::array<std::uint8_t, kMaxFlatDim * kMaxFlatDim> buf{};
  const auto nn = static_cast<std::size_t>(n * n);
  std::span<std::uint8_t> m(buf.data(), nn);
  decode(code, static_cast<std::size_t>(f.q()), m);
  auto [r, d] = rank_det(f, m, n);
  ++c.by_rank[static_cast<std::size_t>(r)];
  ++c.by_det[d];
}

RingCensus empty_census(const FieldSpec& f, int n) {
  return {std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0),
          std::vector<std::uint64_t>(static_cast<std::size_t>(f.q()), 0)};
}

void accumulate(RingCensus& into, const RingCensus& from) {
  for (std::size_t i = 0; i < into.by_rank.size(); ++i) into.by_rank[i] += from.by_rank[i];
  for (std::size_t i = 0; i < into.by_det.size(); ++i) into.by_det[i] += from.by_det[i];
}

}  // namespace

std::pair<int, std::uint8_t> rank_det(const FieldSpec& f, std::span<const std::uint8_t> m,
                                      int n) {
  require_dim(n);
  const Tables t(f);
  std::array<std::uint8_t, kMaxFlatDim * kMaxFlatDim> a{};
  std::copy(m.begin(), m.end(), a.begin());
  auto at = [&](int r, int c) -> std::uint8_t& { return a[static_cast<std::size_t>(r * n + c)]; };
  std::uint8_t det = 1;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int pivot = -1;
    for (int r = row; r < n; ++r) {
      if (at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int c = 0; c < n; ++c) std::swap(at(pivot, c), at(row, c));
      det = t.neg[det];
    }
    det = t.times(det, at(row, col));
    const std::uint8_t p_inv = f.inv(FieldElem{at(row, col)}).code & 0xFFU;
    for (int r = row + 1; r < n; ++r) {
      if (at(r, col) == 0) continue;
      const std::uint8_t factor = t.neg[t.times(at(r, col), p_inv)];
      for (int c = col; c < n; ++c) at(r, c) = t.plus(at(r, c), t.times(factor, at(row, c)));
    }
    ++row;
  }
  if (row < n) det = 0;
  return {row, det};
}

std::uint8_t trace_of_product(const FieldSpec& f, std::span<const std::uint8_t> a,
                              std::span<const std::uint8_t> s, int n) {
  const Tables t(f);
  std::uint8_t sum = 0;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t k = 0; k < un; ++k) sum = t.plus(sum, t.times(a[i * un + k], s[k * un + i]));
  }
  return sum;
}

AdjacencyBits cayley_adjacency(const FieldSpec& f, const MatrixSet& connection) {
  const auto nn = static_cast<std::size_t>(connection.n * connection.n);
  const std::uint64_t size = enumerable_ring_size(connection.n, f);
  const Tables t(f);
  AdjacencyBits adj;
  adj.vertices = static_cast<std::size_t>(size);
  adj.words = (adj.vertices + 63) / 64;
  adj.bits.assign(adj.vertices * adj.words, 0);
  std::vector<std::uint8_t> u(nn);
  for (std::size_t code = 0; code < adj.vertices; ++code) {
    decode(code, t.q, u);
    for (std::size_t i = 0; i < connection.size(); ++i) {
      const auto s = connection.at(i);
      std::uint64_t v = 0;
      for (std::size_t k = nn; k-- > 0;) v = v * t.q + t.plus(u[k], s[k]);
      adj.bits[code * adj.words + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  return adj;
}

namespace serial {

std::vector<std::uint64_t> trace_histogram(const FieldSpec& f, std::span<const std::uint8_t> a,
                                           const MatrixSet& s) {
  const Tables t(f);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(f.p()), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    ++hist[t.tr[trace_of_product(f, a, s.at(i), s.n)]];
  }
  return hist;
}

RingCensus ring_census(const FieldSpec& f, int n, std::uint64_t lo, std::uint64_t hi) {
  require_dim(n);
  hi = std::min(hi, enumerable_ring_size(n, f));
  RingCensus c = empty_census(f, n);
  for (std::uint64_t code = lo; code < hi; ++code) census_one(f, n, code, c);
  return c;
}

PairStats common_neighbor_scan(const AdjacencyBits& adj) {
  PairStats stats;
  for (std::size_t u = 0; u < adj.vertices; ++u) scan_row(adj, u, stats);
  return stats;
}

std::optional<std::pair<std::size_t, std::size_t>> first_det_difference(
    const FieldSpec& f, const MatrixSet& x, const MatrixSet& y, std::uint8_t alpha) {
  const Tables t(f);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (det2_of_difference(t, x.at(i), y.at(j)) == alpha) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

std::uint64_t zero_sum_pairs(const FieldSpec& f, const MatrixSet& s) {
  const Tables t(f);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) count += sums_to_zero(t, s.at(i), s.at(j));
  }
  return count;
}

}  // namespace serial

namespace omp {

std::vector<std::uint64_t> trace_histogram(const FieldSpec& f, std::span<const std::uint8_t> a,
                                           const MatrixSet& s) {
  const Tables t(f);
  const auto p = static_cast<std::size_t>(f.p());
  std::vector<std::uint64_t> hist(p, 0);
  const auto count = static_cast<std::int64_t>(s.size());
#pragma omp parallel num_threads(worker_count())
  {
    std::vector<std::uint64_t> local(p, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      ++local[t.tr[trace_of_product(f, a, s.at(static_cast<std::size_t>(i)), s.n)]];
    }
#pragma omp critical
    for (std::size_t k = 0; k < p; ++k) hist[k] += local[k];
  }
  return hist;
}

RingCensus ring_census(const FieldSpec& f, int n, std::uint64_t lo, std::uint64_t hi) {
  require_dim(n);
  hi = std::min(hi, enumerable_ring_size(n, f));
  RingCensus total = empty_census(f, n);
  const auto first = static_cast<std::int64_t>(lo);
  const auto last = static_cast<std::int64_t>(hi);
#pragma omp parallel num_threads(worker_count())
  {
    RingCensus local = empty_census(f, n);
#pragma omp for schedule(static) nowait
    for (std::int64_t code = first; code < last; ++code) {
      census_one(f, n, static_cast<std::uint64_t>(code), local);
    }
#pragma omp critical
    accumulate(total, local);
  }
  return total;
}

PairStats common_neighbor_scan(const AdjacencyBits& adj) {
  PairStats total;
  const auto count = static_cast<std::int64_t>(adj.vertices);
#pragma omp parallel num_threads(worker_count())
  {
    PairStats local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t u = 0; u < count; ++u) scan_row(adj, static_cast<std::size_t>(u), local);
#pragma omp critical
    merge(total, local);
  }
  return total;
}

std::optional<std::pair<std::size_t, std::size_t>> first_det_difference(
    const FieldSpec& f, const MatrixSet& x, const MatrixSet& y, std::uint8_t alpha) {
  const Tables t(f);
  const auto ny = y.size();
  std::uint64_t best = UINT64_MAX;
  const auto count = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best) num_threads(worker_count())
  for (std::int64_t i = 0; i < count; ++i) {
    const auto row = static_cast<std::size_t>(i);
    if (row * ny >= best) continue;
    for (std::size_t j = 0; j < ny; ++j) {
      if (det2_of_difference(t, x.at(row), y.at(j)) == alpha) {
        best = std::min<std::uint64_t>(best, row * ny + j);
        break;
      }
    }
  }
  if (best == UINT64_MAX) return std::nullopt;
  return std::pair{static_cast<std::size_t>(best / ny), static_cast<std::size_t>(best % ny)};
}

std::uint64_t zero_sum_pairs(const FieldSpec& f, const MatrixSet& s) {
  const Tables t(f);
  std::uint64_t count = 0;
  const auto size = static_cast<std::int64_t>(s.size());
#pragma omp parallel for schedule(static) reduction(+ : count) num_threads(worker_count())
  for (std::int64_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      count += sums_to_zero(t, s.at(static_cast<std::size_t>(i)), s.at(j));
    }
  }
  return count;
}

}  // namespace omp

}  // namespace matring::kernels
