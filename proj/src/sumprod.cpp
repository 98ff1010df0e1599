#include "matring/sumprod.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "matring/cayley.hpp"
#include "matring/error.hpp"
#include "matring/kernels.hpp"

namespace matring {

SubsetOfRing::SubsetOfRing(Field field, int n, std::vector<std::uint64_t> codes)
    : field_(std::move(field)), n_(n), codes_(std::move(codes)) {
  const std::uint64_t size = enumerable_ring_size(n_, *field_);
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (!codes_.empty() && codes_.back() >= size) {
    throw Error(ErrorCode::FieldMismatch,
                "matrix code " + std::to_string(codes_.back()) + " outside the ring");
  }
}

MatrixSet SubsetOfRing::to_matrix_set() const {
  MatrixSet set;
  set.n = n_;
  set.q = field_->q();
  set.codes = codes_;
  const auto nn = static_cast<std::size_t>(n_ * n_);
  const auto q = static_cast<std::uint64_t>(field_->q());
  set.entries.reserve(codes_.size() * nn);
  for (auto code : codes_) {
    for (std::size_t i = 0; i < nn; ++i) {
      set.entries.push_back(static_cast<std::uint8_t>(code % q));
      code /= q;
    }
  }
  return set;
}

SubsetOfField::SubsetOfField(Field field, std::vector<int> codes) : field_(std::move(field)) {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  elems_.reserve(codes.size());
  for (int c : codes) elems_.push_back(field_->elem(c));
}

SubsetOfField SubsetOfField::whole(const Field& field) {
  std::vector<int> codes(static_cast<std::size_t>(field->q()));
  std::iota(codes.begin(), codes.end(), 0);
  return {field, std::move(codes)};
}

GapThreshold gap_threshold(const Field& field) {
  const double q = field->q();
  GapThreshold t;
  t.weil = 2.0 * q * q * q * std::sqrt(q) / (q - 1.0);
  t.proof_nstar = 2.0 * std::pow(q, 5) * std::sqrt(q) / (q * q * q - q);
  t.exact = spectral_gap_bound(CayleyGraphSpec(field, 2, Connection::det_equals(field->one())))
                .nstar_exact;
  return t;
}

std::optional<DetWitness> det_difference_witness(const SubsetOfRing& x, const SubsetOfRing& y,
                                                 FieldElem alpha) {
  if (!same_field(*x.field(), *y.field())) {
    throw Error(ErrorCode::FieldMismatch, "subsets over different fields");
  }
  if (x.n() != 2 || y.n() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "determinant witnesses need 2 x 2 matrices");
  }
  const FieldSpec& f = *x.field();
  if (f.elem(alpha.code).is_zero()) throw Error(ErrorCode::ZeroAlpha, "alpha must be nonzero");
  if (static_cast<double>(x.size()) * static_cast<double>(y.size()) >
      static_cast<double>(kMaxBruteForcePairs)) {
    throw Error(ErrorCode::TooLarge, "|X||Y| exceeds 10^8");
  }
  const auto xs = x.to_matrix_set();
  const auto ys = y.to_matrix_set();
  const auto hit = kernels::omp::first_det_difference(f, xs, ys, static_cast<std::uint8_t>(alpha.code));
  if (!hit) return std::nullopt;
  return DetWitness{Matrix::from_code(x.field(), 2, xs.codes[hit->first]),
                    Matrix::from_code(x.field(), 2, ys.codes[hit->second])};
}

namespace {

std::vector<bool> difference_set(const FieldSpec& f, const SubsetOfField& a,
                                 const SubsetOfField& b) {
  std::vector<bool> hit(static_cast<std::size_t>(f.q()), false);
  for (auto x : a.elements()) {
    for (auto y : b.elements()) hit[f.sub(x, y).code] = true;
  }
  return hit;
}

}  // namespace

SumProdResult sumprod_cover(const SubsetOfField& a, const SubsetOfField& b,
                            const SubsetOfField& c, const SubsetOfField& d) {
  const FieldSpec& f = *a.field();
  for (const auto* s : {&b, &c, &d}) {
    if (!same_field(f, *s->field())) throw Error(ErrorCode::FieldMismatch, "subsets over different fields");
  }
  const double quad = static_cast<double>(a.size()) * static_cast<double>(b.size()) *
                      static_cast<double>(c.size()) * static_cast<double>(d.size());
  if (quad > static_cast<double>(kMaxBruteForcePairs)) {
    throw Error(ErrorCode::TooLarge, "|A||B||C||D| exceeds 10^8");
  }

  // (A - B)(C - D) depends only on the two difference sets.
  const auto left = difference_set(f, a, b);
  const auto right = difference_set(f, c, d);
  std::vector<bool> product(left.size(), false);
  for (std::size_t u = 0; u < left.size(); ++u) {
    if (!left[u]) continue;
    for (std::size_t v = 0; v < right.size(); ++v) {
      if (right[v]) {
        product[f.mul(FieldElem{static_cast<std::uint16_t>(u)},
                      FieldElem{static_cast<std::uint16_t>(v)}).code] = true;
      }
    }
  }

  SumProdResult r;
  for (std::size_t u = 0; u < product.size(); ++u) {
    if (product[u]) r.set.push_back(FieldElem{static_cast<std::uint16_t>(u)});
  }
  r.covers_all = r.set.size() == product.size();

  const double q = f.q();
  r.four_set_threshold = std::sqrt(2.0) * std::pow(q, 1.25) / std::sqrt(q - 1.0);
  r.four_set_hypothesis = std::pow(quad, 0.25) > r.four_set_threshold;
  r.four_set_vacuous = r.four_set_threshold >= q - 1.0;
  r.single_set_threshold = 1.5 * std::pow(q, 0.75);
  r.single_set_hypothesis = static_cast<double>(a.size()) > r.single_set_threshold;
  r.single_set_vacuous = r.single_set_threshold >= q - 1.0;
  return r;
}

SubsetOfRing embed_field_subsets(const SubsetOfField& a, const SubsetOfField& c) {
  const Field& field = a.field();
  if (!same_field(*field, *c.field())) throw Error(ErrorCode::FieldMismatch, "subsets over different fields");
  const auto q = static_cast<std::uint64_t>(field->q());
  std::vector<std::uint64_t> codes;
  codes.reserve(q * a.size() * c.size());
  // Digits: m11, m12, m21, m22.
  for (auto m11 : a.elements()) {
    for (auto m22 : c.elements()) {
      for (std::uint64_t m12 = 0; m12 < q; ++m12) {
        codes.push_back(m11.code + q * m12 + q * q * q * m22.code);
      }
    }
  }
  return {field, 2, std::move(codes)};
}

std::vector<std::uint64_t> parse_code_list(const std::string& text) {
  std::vector<std::uint64_t> codes;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    if (!std::all_of(token.begin(), token.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected a decimal code, got '" + token + "'");
    }
    try {
      codes.push_back(std::stoull(token));
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": code out of range");
    }
  }
  return codes;
}

std::vector<std::uint64_t> read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_list(buf.str());
}

namespace {

std::vector<std::uint64_t> sample_codes(std::uint64_t universe, std::size_t size,
                                        std::mt19937_64& rng) {
  if (size > universe) throw Error(ErrorCode::TooLarge, "subset larger than the universe");
  // Partial Fisher-Yates over [0, universe).
  std::vector<std::uint64_t> pool(static_cast<std::size_t>(universe));
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(size);
  return pool;
}

}  // namespace

SubsetOfRing random_ring_subset(const Field& field, int n, std::size_t size, std::mt19937_64& rng) {
  return {field, n, sample_codes(enumerable_ring_size(n, *field), size, rng)};
}

SubsetOfField random_field_subset(const Field& field, std::size_t size, std::mt19937_64& rng) {
  const auto picked = sample_codes(static_cast<std::uint64_t>(field->q()), size, rng);
  return {field, std::vector<int>(picked.begin(), picked.end())};
}

SubsetOfRing singular_row_subset(const Field& field) {
  const auto q = static_cast<std::uint64_t>(field->q());
  std::vector<std::uint64_t> codes;
  for (std::uint64_t m11 = 0; m11 < q; ++m11) {
    for (std::uint64_t m12 = 0; m12 < q; ++m12) codes.push_back(m11 + q * m12);
  }
  return {field, 2, std::move(codes)};
}

}  // namespace matring
