#include "matring/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "matring/error.hpp"
#include "matring/kernels.hpp"
#include "matring/parallel.hpp"

namespace matring {
namespace {

std::int64_t isqrt_exact(std::int64_t d) {
  if (d < 0) return -1;
  auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(d))));
  while (s * s > d) --s;
  while ((s + 1) * (s + 1) <= d) ++s;
  return s * s == d ? s : -1;
}

std::vector<std::uint8_t> digits_of(std::uint64_t code, std::size_t q, std::size_t count) {
  std::vector<std::uint8_t> d(count);
  for (auto& x : d) {
    x = static_cast<std::uint8_t>(code % q);
    code /= q;
  }
  return d;
}

std::uint8_t det_of_difference(const FieldSpec& f, const std::vector<std::uint8_t>& a,
                               const std::vector<std::uint8_t>& b, int n) {
  std::vector<std::uint8_t> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    d[i] = static_cast<std::uint8_t>(f.sub(FieldElem{a[i]}, FieldElem{b[i]}).code);
  }
  return kernels::rank_det(f, d, n).second;
}

}  // namespace

SrgParams srg_params_unit_mat2(std::int64_t q) {
  const std::int64_t q2 = q * q;
  const std::int64_t q3 = q2 * q;
  const std::int64_t q4 = q3 * q;
  return {q4, q4 - q3 - q2 + q, q4 - 2 * q3 - q2 + 3 * q, q4 - 2 * q3 + q};
}

std::optional<SrgParams> srg_check_bruteforce(const CayleyGraphSpec& g) {
  if (!g.is_symmetric()) {
    throw Error(ErrorCode::DirectedGraph, "connection set is not closed under negation");
  }
  const BigInt v = g.vertex_count();
  if (v > kMaxSrgVertices) {
    throw Error(ErrorCode::TooLarge, "SRG scan limited to 10^4 vertices, got " + v.str());
  }
  const auto adj = kernels::cayley_adjacency(*g.field(), g.connection_set());
  const auto stats = kernels::omp::common_neighbor_scan(adj);

  const auto vertices = static_cast<std::int64_t>(adj.vertices);
  const auto degree = static_cast<std::int64_t>(g.connection_set().size());
  if (degree == 0 || degree == vertices - 1) return std::nullopt;
  if (stats.adjacent_pairs == 0 || stats.nonadjacent_pairs == 0) return std::nullopt;
  if (stats.adjacent_min != stats.adjacent_max) return std::nullopt;
  if (stats.nonadjacent_min != stats.nonadjacent_max) return std::nullopt;
  return SrgParams{vertices, degree,
                   static_cast<std::int64_t>(stats.adjacent_common_sum / stats.adjacent_pairs),
                   static_cast<std::int64_t>(stats.nonadjacent_common_sum / stats.nonadjacent_pairs)};
}

SrgSpectrum srg_eigen_from_params(const SrgParams& p) {
  const std::int64_t diff = p.a - p.c;
  const std::int64_t disc = diff * diff + 4 * (p.k - p.c);
  if (disc <= 0) throw Error(ErrorCode::InfeasibleParams, "discriminant must be positive");
  const std::int64_t n1 = p.v - 1;
  const std::int64_t t = 2 * p.k + n1 * diff;

  SrgSpectrum s;
  s.k = static_cast<double>(p.k);
  if (const std::int64_t root = isqrt_exact(disc); root > 0) {
    // m2 = ((v-1) sqrt(D) - t) / (2 sqrt(D)), m3 = ((v-1) sqrt(D) + t) / (2 sqrt(D))
    const std::int64_t num2 = n1 * root - t;
    const std::int64_t num3 = n1 * root + t;
    if (num2 % (2 * root) != 0 || num3 % (2 * root) != 0) {
      throw Error(ErrorCode::InfeasibleParams, "non-integral multiplicities");
    }
    s.m2 = num2 / (2 * root);
    s.m3 = num3 / (2 * root);
    s.lambda2 = static_cast<double>(diff + root) / 2.0;
    s.lambda3 = static_cast<double>(diff - root) / 2.0;
    s.exact = true;
  } else {
    const double r = std::sqrt(static_cast<double>(disc));
    const double m2 = 0.5 * (static_cast<double>(n1) - static_cast<double>(t) / r);
    const double m3 = 0.5 * (static_cast<double>(n1) + static_cast<double>(t) / r);
    if (std::abs(m2 - std::round(m2)) > 1e-9 || std::abs(m3 - std::round(m3)) > 1e-9) {
      throw Error(ErrorCode::InfeasibleParams, "non-integral multiplicities");
    }
    s.m2 = std::llround(m2);
    s.m3 = std::llround(m3);
    s.lambda2 = (static_cast<double>(diff) + r) / 2.0;
    s.lambda3 = (static_cast<double>(diff) - r) / 2.0;
  }
  if (s.m2 < 0 || s.m3 < 0) throw Error(ErrorCode::InfeasibleParams, "negative multiplicity");
  return s;
}

bool KloostermanValue::within_weil() const { return std::abs(value) <= weil_bound + 1e-9; }

KloostermanValue kloosterman(FieldElem delta, const Field& field) {
  const FieldSpec& f = *field;
  if (f.elem(delta.code).is_zero()) throw Error(ErrorCode::ZeroDelta, "delta must be nonzero");
  std::complex<double> sum{0.0, 0.0};
  for (auto a : f.units()) sum += f.character(f.add(a, f.mul(delta, f.inv(a))));
  KloostermanValue k;
  k.delta = delta;
  k.value = sum.real();
  k.imag = sum.imag();
  k.weil_bound = 2.0 * std::sqrt(static_cast<double>(f.q()));
  return k;
}

SpectrumReport sl2_spectrum_closed_form(const Field& field) {
  const FieldSpec& f = *field;
  const auto q = static_cast<std::int64_t>(f.q());
  SpectrumReport r;
  r.graph_connection = "det:1";
  r.n = 2;
  r.q = f.q();
  r.classes.push_back({"rank0", Matrix(field, 2), static_cast<double>(q * q * q - q), 1});
  const FieldElem diag1[] = {f.one(), f.zero()};
  r.classes.push_back({"rank1", Matrix::diagonal(field, diag1), static_cast<double>(-q),
                       static_cast<std::uint64_t>(q * q * q + q * q - q - 1)});
  for (auto delta : f.units()) {
    const FieldElem diag[] = {f.one(), delta};
    r.classes.push_back({"det:" + std::to_string(delta.code), Matrix::diagonal(field, diag),
                         static_cast<double>(q) * kloosterman(delta, field).value,
                         static_cast<std::uint64_t>(q * q * q - q)});
  }
  r.merged = merge_spectrum(r.classes);
  r.all_real = true;
  r.all_integer = std::all_of(r.classes.begin(), r.classes.end(), [](const SpectrumEntry& e) {
    return std::abs(e.eigenvalue.real() - std::round(e.eigenvalue.real())) < 1e-6;
  });
  return r;
}

std::vector<SpectrumEntry> unit_mat2_spectrum_closed_form(std::int64_t q) {
  const std::int64_t q2 = q * q;
  const std::int64_t q3 = q2 * q;
  const std::int64_t q4 = q3 * q;
  std::vector<SpectrumEntry> entries = {
      {"rank0", std::nullopt, static_cast<double>(q4 - q3 - q2 + q), 1},
      {"rank2", std::nullopt, static_cast<double>(q),
       static_cast<std::uint64_t>(q4 - q3 - q2 + q)},
      {"rank1", std::nullopt, static_cast<double>(q - q2),
       static_cast<std::uint64_t>(q3 + q2 - q - 1)},
  };
  return merge_spectrum(entries);
}

std::vector<CharSumCheck> char_sum_identities(const Field& field) {
  const FieldSpec& f = *field;
  const double q = f.q();
  const auto gl = collect_matrix_set(field, 2, MatrixFilter::invertible());
  const auto sl = collect_matrix_set(field, 2, MatrixFilter::det_equals(f.one()));

  auto sum_over = [&](const MatrixSet& set, auto&& argument) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto m = set.at(i);
      s += f.character(argument(FieldElem{m[0]}, FieldElem{m[3]}));
    }
    return s;
  };
  auto check = [](std::string name, std::optional<FieldElem> delta, std::complex<double> got,
                  double want) {
    const bool ok = std::abs(got - std::complex<double>(want, 0.0)) < 1e-9;
    return CharSumCheck{std::move(name), delta, got, want, ok};
  };

  std::vector<CharSumCheck> out;
  out.push_back(check("gl2_s11", std::nullopt,
                      sum_over(gl, [](FieldElem s11, FieldElem) { return s11; }), q - q * q));
  out.push_back(check("gl2_s11_plus_s22", std::nullopt,
                      sum_over(gl, [&](FieldElem s11, FieldElem s22) { return f.add(s11, s22); }),
                      q));
  out.push_back(check("sl2_s11", std::nullopt,
                      sum_over(sl, [](FieldElem s11, FieldElem) { return s11; }), -q));
  for (auto delta : f.units()) {
    out.push_back(check("sl2_s11_plus_delta_s22", delta,
                        sum_over(sl,
                                 [&](FieldElem s11, FieldElem s22) {
                                   return f.add(s11, f.mul(delta, s22));
                                 }),
                        q * kloosterman(delta, field).value));
  }
  return out;
}

std::vector<std::uint64_t> iso_g_alpha(FieldElem alpha, const Field& field, int n) {
  const FieldSpec& f = *field;
  if (f.elem(alpha.code).is_zero()) throw Error(ErrorCode::ZeroAlpha, "alpha must be nonzero");
  const std::uint64_t size = enumerable_ring_size(n, f);
  std::vector<std::uint64_t> map(static_cast<std::size_t>(size));
  for (std::uint64_t code = 0; code < size; ++code) {
    Matrix x = Matrix::from_code(field, n, code);
    for (int c = 0; c < n; ++c) x.set(n - 1, c, f.mul(alpha, x(n - 1, c)));
    map[static_cast<std::size_t>(code)] = x.code();
  }
  return map;
}

bool check_isomorphism(const std::vector<std::uint64_t>& map, FieldElem alpha, const Field& field,
                       int n) {
  const FieldSpec& f = *field;
  const std::uint64_t size = enumerable_ring_size(n, f);
  if (map.size() != size) return false;
  // Bijectivity.
  std::vector<bool> seen(static_cast<std::size_t>(size), false);
  for (auto image : map) {
    if (image >= size || seen[static_cast<std::size_t>(image)]) return false;
    seen[static_cast<std::size_t>(image)] = true;
  }
  const auto q = static_cast<std::size_t>(f.q());
  const auto nn = static_cast<std::size_t>(n * n);
  std::vector<std::vector<std::uint8_t>> digits(static_cast<std::size_t>(size));
  for (std::uint64_t c = 0; c < size; ++c) digits[c] = digits_of(c, q, nn);

  bool ok = true;
  const auto count = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(dynamic, 4) reduction(&& : ok) num_threads(worker_count())
  for (std::int64_t u = 0; u < count; ++u) {
    for (std::uint64_t v = 0; v < size; ++v) {
      const bool edge1 = det_of_difference(f, digits[v], digits[u], n) == 1;
      const bool edge_alpha =
          det_of_difference(f, digits[map[v]], digits[map[u]], n) == alpha.code;
      if (edge1 != edge_alpha) ok = false;
    }
  }
  return ok;
}

}  // namespace matring
