#include "matring/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <Eigen/Dense>

#include "matring/error.hpp"
#include "matring/kernels.hpp"
#include "matring/normal_form.hpp"

namespace matring {
namespace {

std::vector<std::uint8_t> flat(const Matrix& m) {
  std::vector<std::uint8_t> out;
  out.reserve(m.entries().size());
  for (auto e : m.entries()) out.push_back(static_cast<std::uint8_t>(e.code));
  return out;
}

std::vector<int> bfs_from(const CayleyGraphSpec& g, std::uint64_t source, std::uint64_t vertices) {
  const FieldSpec& f = *g.field();
  const MatrixSet& s = g.connection_set();
  const auto q = static_cast<std::uint64_t>(f.q());
  const auto nn = static_cast<std::size_t>(g.n() * g.n());
  const auto add = f.add_table();

  std::vector<int> dist(static_cast<std::size_t>(vertices), -1);
  std::vector<std::uint8_t> digits(nn);
  std::deque<std::uint64_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::uint64_t u = queue.front();
    queue.pop_front();
    std::uint64_t c = u;
    for (auto& d : digits) {
      d = static_cast<std::uint8_t>(c % q);
      c /= q;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto step = s.at(i);
      std::uint64_t v = 0;
      for (std::size_t k = nn; k-- > 0;) v = v * q + add[digits[k] * q + step[k]];
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::uint64_t bounded_vertices(const CayleyGraphSpec& g, std::uint64_t limit) {
  const BigInt v = g.vertex_count();
  if (v > limit) {
    throw Error(ErrorCode::TooLarge, "graph has " + v.str() + " vertices, limit " +
                                         std::to_string(limit));
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::string Connection::label() const {
  return kind == Kind::Invertible ? "gl" : "det:" + std::to_string(alpha.code);
}

MatrixFilter Connection::filter() const {
  return kind == Kind::Invertible ? MatrixFilter::invertible() : MatrixFilter::det_equals(alpha);
}

CayleyGraphSpec::CayleyGraphSpec(Field field, int n, Connection connection)
    : field_(std::move(field)), n_(n), connection_(connection) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 1");
  if (connection_.kind == Connection::Kind::Det) {
    if (field_->elem(connection_.alpha.code).is_zero()) {
      throw Error(ErrorCode::ZeroAlpha, "determinant-0 matrices do not form a connection set");
    }
  }
}

BigInt CayleyGraphSpec::vertex_count() const {
  return boost::multiprecision::pow(BigInt(field_->q()), static_cast<unsigned>(n_ * n_));
}

BigInt CayleyGraphSpec::degree() const {
  BigInt gl = gl_order(n_, field_->q());
  return connection_.kind == Connection::Kind::Invertible ? gl : BigInt(gl / (field_->q() - 1));
}

bool CayleyGraphSpec::is_symmetric() const {
  return connection_.kind == Connection::Kind::Invertible || n_ % 2 == 0 || field_->p() == 2;
}

const MatrixSet& CayleyGraphSpec::connection_set() const {
  if (!set_) set_ = collect_matrix_set(field_, n_, connection_.filter());
  return *set_;
}

bool adjacent(const CayleyGraphSpec& g, const Matrix& u, const Matrix& v) {
  if (u.n() != g.n() || v.n() != g.n()) {
    throw Error(ErrorCode::DimensionMismatch, "vertex shape does not match the graph");
  }
  if (!same_field(u.spec(), *g.field()) || !same_field(v.spec(), *g.field())) {
    throw Error(ErrorCode::FieldMismatch, "vertex field does not match the graph");
  }
  return g.connection().filter().accepts(v - u);
}

std::complex<double> eigenvalue_from_histogram(const FieldSpec& f,
                                               const std::vector<std::uint64_t>& hist) {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t t = 0; t < hist.size(); ++t) {
    sum += static_cast<double>(hist[t]) * f.root_of_unity(static_cast<int>(t));
  }
  return sum;
}

std::complex<double> char_eigenvalue(const CayleyGraphSpec& g, const Matrix& a) {
  if (a.n() != g.n()) throw Error(ErrorCode::DimensionMismatch, "character index shape");
  const auto hist = kernels::omp::trace_histogram(*g.field(), flat(a), g.connection_set());
  return eigenvalue_from_histogram(*g.field(), hist);
}

std::uint64_t SpectrumReport::multiplicity_sum() const {
  std::uint64_t s = 0;
  for (const auto& e : classes) s += e.multiplicity;
  return s;
}

std::vector<SpectrumEntry> merge_spectrum(const std::vector<SpectrumEntry>& entries,
                                          double tolerance) {
  std::vector<SpectrumEntry> merged;
  for (const auto& e : entries) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const SpectrumEntry& m) {
      return std::abs(m.eigenvalue - e.eigenvalue) < tolerance;
    });
    if (it == merged.end()) {
      merged.push_back({e.label, std::nullopt, e.eigenvalue, e.multiplicity});
    } else {
      it->label += "+" + e.label;
      it->multiplicity += e.multiplicity;
    }
  }
  std::stable_sort(merged.begin(), merged.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() > b.eigenvalue.real();
    return a.eigenvalue.imag() > b.eigenvalue.imag();
  });
  return merged;
}

SpectrumReport spectrum_by_classes(const CayleyGraphSpec& g) {
  const Field& field = g.field();
  const FieldSpec& f = *field;
  const int n = g.n();
  const auto census = kernels::omp::ring_census(f, n, 0, enumerable_ring_size(n, f));

  SpectrumReport report;
  report.graph_connection = g.connection().label();
  report.n = n;
  report.q = f.q();

  auto add_class = [&](std::string label, Matrix rep, std::uint64_t mult) {
    const auto eig = char_eigenvalue(g, rep);
    report.classes.push_back({std::move(label), std::move(rep), eig, mult});
  };
  for (int r = 0; r < n; ++r) {
    add_class("rank" + std::to_string(r), canonical_normal_form(field, n, r, f.one()),
              census.by_rank[static_cast<std::size_t>(r)]);
  }
  if (g.connection().kind == Connection::Kind::Invertible) {
    add_class("rank" + std::to_string(n), canonical_normal_form(field, n, n, f.one()),
              census.by_rank[static_cast<std::size_t>(n)]);
  } else {
    for (auto delta : f.units()) {
      add_class("det:" + std::to_string(delta.code), canonical_normal_form(field, n, n, delta),
                census.by_det[delta.code]);
    }
  }

  report.merged = merge_spectrum(report.classes);
  report.all_real = std::all_of(report.classes.begin(), report.classes.end(),
                                [](const SpectrumEntry& e) { return std::abs(e.eigenvalue.imag()) < 1e-9; });
  report.all_integer =
      report.all_real && std::all_of(report.classes.begin(), report.classes.end(), [](const SpectrumEntry& e) {
        return std::abs(e.eigenvalue.real() - std::round(e.eigenvalue.real())) < 1e-6;
      });
  return report;
}

Reachability bfs_diameter(const CayleyGraphSpec& g) {
  const auto vertices = bounded_vertices(g, kMaxBfsVertices);
  const auto dist = bfs_from(g, 0, vertices);
  Reachability r;
  r.connected = std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
  r.eccentricity = *std::max_element(dist.begin(), dist.end());
  if (r.connected) r.diameter = r.eccentricity;
  return r;
}

std::vector<std::vector<int>> all_pairs_distances(const CayleyGraphSpec& g) {
  const auto vertices = bounded_vertices(g, kMaxDenseVertices);
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(vertices));
  for (std::uint64_t u = 0; u < vertices; ++u) out.push_back(bfs_from(g, u, vertices));
  return out;
}

std::vector<std::complex<double>> dense_spectrum_oracle(const CayleyGraphSpec& g) {
  const auto vertices = bounded_vertices(g, kMaxDenseVertices);
  const auto adj = kernels::cayley_adjacency(*g.field(), g.connection_set());
  const auto dim = static_cast<Eigen::Index>(vertices);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index u = 0; u < dim; ++u) {
    for (Eigen::Index v = 0; v < dim; ++v) {
      if (adj.test(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) a(u, v) = 1.0;
    }
  }
  std::vector<std::complex<double>> eig;
  eig.reserve(static_cast<std::size_t>(dim));
  if (a.isApprox(a.transpose())) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < dim; ++i) eig.emplace_back(solver.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    for (Eigen::Index i = 0; i < dim; ++i) eig.push_back(solver.eigenvalues()(i));
  }
  std::sort(eig.begin(), eig.end(), [](auto x, auto y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return eig;
}

GapBound spectral_gap_bound(const CayleyGraphSpec& g) {
  const auto report = spectrum_by_classes(g);
  double max_nontrivial = 0.0;
  for (const auto& e : report.classes) {
    if (e.label == "rank0") continue;  // trivial character
    max_nontrivial = std::max(max_nontrivial, std::abs(e.eigenvalue));
  }
  const double v = static_cast<double>(g.vertex_count());
  const double s = static_cast<double>(g.degree());
  GapBound b;
  b.nstar_exact = v / s * max_nontrivial;
  b.nstar_weil = b.nstar_exact;
  if (g.n() == 2) {
    const double q = g.field()->q();
    if (g.connection().kind == Connection::Kind::Det) {
      // |q K(delta)| <= 2 q sqrt(q) dominates |mu_0| = q.
      b.nstar_weil = 2.0 * std::pow(q, 5) * std::sqrt(q) / (q * q * q - q);
    } else {
      // Unit graph spectrum {k, q, q - q^2}: largest nontrivial modulus q^2 - q.
      b.nstar_weil = v / s * (q * q - q);
    }
  }
  return b;
}

}  // namespace matring
