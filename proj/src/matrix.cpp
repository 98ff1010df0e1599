#include "matring/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <utility>

#include "matring/error.hpp"

namespace matring {
namespace {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return std::nullopt;
    r *= base;
  }
  return r;
}

void require_same(const Matrix& a, const Matrix& b) {
  if (!same_field(a.spec(), b.spec())) {
    throw Error(ErrorCode::FieldMismatch, "matrices over different fields");
  }
  if (a.n() != b.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.n()) + "x" + std::to_string(a.n()) + " vs " +
                    std::to_string(b.n()) + "x" + std::to_string(b.n()));
  }
}

// Row-reduces a copy of m. Returns (rank, product of pivots with row-swap sign).
std::pair<int, FieldElem> eliminate(const Matrix& m) {
  const FieldSpec& f = m.spec();
  const int n = m.n();
  std::vector<FieldElem> a(m.entries().begin(), m.entries().end());
  auto at = [&](int r, int c) -> FieldElem& { return a[static_cast<std::size_t>(r * n + c)]; };

  FieldElem det = f.one();
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int pivot = -1;
    for (int r = row; r < n; ++r) {
      if (!at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      det = f.zero();
      continue;
    }
    if (pivot != row) {
      for (int c = 0; c < n; ++c) std::swap(at(pivot, c), at(row, c));
      det = f.neg(det);
    }
    const FieldElem p = at(row, col);
    det = f.mul(det, p);
    const FieldElem p_inv = f.inv(p);
    for (int r = row + 1; r < n; ++r) {
      const FieldElem factor = f.mul(at(r, col), p_inv);
      if (factor.is_zero()) continue;
      for (int c = col; c < n; ++c) at(r, c) = f.sub(at(r, c), f.mul(factor, at(row, c)));
    }
    ++row;
  }
  if (row < n) det = f.zero();
  return {row, det};
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw Error(ErrorCode::ParseError, "not a non-negative integer: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Matrix::Matrix(Field field, int n) : field_(std::move(field)), n_(n) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 1");
  entries_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), FieldElem{});
}

Matrix::Matrix(Field field, int n, std::vector<FieldElem> entries)
    : field_(std::move(field)), n_(n), entries_(std::move(entries)) {
  if (n < 1 || entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DimensionMismatch, "entry count must be n^2");
  }
  for (auto e : entries_) field_->elem(e.code);
}

Matrix Matrix::identity(Field field, int n) {
  Matrix m(std::move(field), n);
  for (int i = 0; i < n; ++i) m.set(i, i, FieldElem{1});
  return m;
}

Matrix Matrix::diagonal(Field field, std::span<const FieldElem> diag) {
  Matrix m(std::move(field), static_cast<int>(diag.size()));
  for (int i = 0; i < m.n(); ++i) m.set(i, i, diag[static_cast<std::size_t>(i)]);
  return m;
}

Matrix Matrix::from_codes(Field field, int n, std::span<const int> codes) {
  std::vector<FieldElem> entries;
  entries.reserve(codes.size());
  for (int c : codes) entries.push_back(field->elem(c));
  return Matrix(std::move(field), n, std::move(entries));
}

Matrix Matrix::from_code(Field field, int n, std::uint64_t code) {
  Matrix m(field, n);
  const auto q = static_cast<std::uint64_t>(field->q());
  for (auto& e : m.entries_) {
    e = FieldElem{static_cast<std::uint16_t>(code % q)};
    code /= q;
  }
  if (code != 0) throw Error(ErrorCode::TooLarge, "matrix code out of range");
  return m;
}

void Matrix::set(int r, int c, FieldElem v) {
  field_->elem(v.code);
  entries_[index(r, c)] = v;
}

std::uint64_t Matrix::code() const {
  const auto q = static_cast<std::uint64_t>(field_->q());
  if (!checked_pow(q, n_ * n_)) {
    throw Error(ErrorCode::TooLarge, "q^(n^2) does not fit a 64-bit code");
  }
  std::uint64_t code = 0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) code = code * q + it->code;
  return code;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](FieldElem e) { return e.is_zero(); });
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.n_ == b.n_ && same_field(*a.field_, *b.field_) && a.entries_ == b.entries_;
}

FieldElem det(const Matrix& m) { return eliminate(m).second; }

int rank(const Matrix& m) { return eliminate(m).first; }

FieldElem trace(const Matrix& m) {
  FieldElem t{};
  for (int i = 0; i < m.n(); ++i) t = m.spec().add(t, m(i, i));
  return t;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  require_same(a, b);
  std::vector<FieldElem> out(a.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.spec().add(a.entries()[i], b.entries()[i]);
  return Matrix(a.field(), a.n(), std::move(out));
}

Matrix mat_sub(const Matrix& a, const Matrix& b) { return mat_add(a, mat_neg(b)); }

Matrix mat_neg(const Matrix& a) {
  std::vector<FieldElem> out(a.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.spec().neg(a.entries()[i]);
  return Matrix(a.field(), a.n(), std::move(out));
}

Matrix mat_scale(FieldElem s, const Matrix& a) {
  std::vector<FieldElem> out(a.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.spec().mul(s, a.entries()[i]);
  return Matrix(a.field(), a.n(), std::move(out));
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same(a, b);
  const FieldSpec& f = a.spec();
  const int n = a.n();
  Matrix out(a.field(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      FieldElem s{};
      for (int k = 0; k < n; ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
      out.set(i, j, s);
    }
  }
  return out;
}

Matrix mat_inv(const Matrix& m) {
  const FieldSpec& f = m.spec();
  const int n = m.n();
  // Gauss-Jordan on [m | I].
  Matrix a = m;
  Matrix inv = Matrix::identity(m.field(), n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        const FieldElem t = a(pivot, c);
        a.set(pivot, c, a(col, c));
        a.set(col, c, t);
        const FieldElem u = inv(pivot, c);
        inv.set(pivot, c, inv(col, c));
        inv.set(col, c, u);
      }
    }
    const FieldElem p_inv = f.inv(a(col, col));
    for (int c = 0; c < n; ++c) {
      a.set(col, c, f.mul(a(col, c), p_inv));
      inv.set(col, c, f.mul(inv(col, c), p_inv));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const FieldElem factor = a(r, col);
      for (int c = 0; c < n; ++c) {
        a.set(r, c, f.sub(a(r, c), f.mul(factor, a(col, c))));
        inv.set(r, c, f.sub(inv(r, c), f.mul(factor, inv(col, c))));
      }
    }
  }
  return inv;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  if (!same_field(a.spec(), b.spec())) {
    throw Error(ErrorCode::FieldMismatch, "blocks over different fields");
  }
  const int n = a.n() + b.n();
  Matrix out(a.field(), n);
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.set(i, j, a(i, j));
  for (int i = 0; i < b.n(); ++i)
    for (int j = 0; j < b.n(); ++j) out.set(a.n() + i, a.n() + j, b(i, j));
  return out;
}

Matrix sub_block(const Matrix& m, int offset, int size) {
  if (offset < 0 || size < 1 || offset + size > m.n()) {
    throw Error(ErrorCode::DimensionMismatch, "sub-block out of range");
  }
  Matrix out(m.field(), size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) out.set(i, j, m(offset + i, offset + j));
  return out;
}

std::string to_literal(const Matrix& m) {
  std::string out = std::to_string(m.n()) + ";" + std::to_string(m.spec().q()) + ";";
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m.entries()[i].code);
  }
  return out;
}

Matrix parse_matrix_literal(std::string_view text, const Field& field) {
  const auto s1 = text.find(';');
  const auto s2 = s1 == text.npos ? text.npos : text.find(';', s1 + 1);
  if (s2 == text.npos) throw Error(ErrorCode::ParseError, "expected n;q;entries");
  const auto n = parse_u64(text.substr(0, s1));
  const auto q = parse_u64(text.substr(s1 + 1, s2 - s1 - 1));
  if (q != static_cast<std::uint64_t>(field->q())) {
    throw Error(ErrorCode::FieldMismatch, "literal q=" + std::to_string(q) +
                                              " does not match F_" + std::to_string(field->q()));
  }
  std::vector<FieldElem> entries;
  std::string_view rest = text.substr(s2 + 1);
  while (true) {
    const auto comma = rest.find(',');
    entries.push_back(field->elem(static_cast<int>(parse_u64(rest.substr(0, comma)))));
    if (comma == rest.npos) break;
    rest = rest.substr(comma + 1);
  }
  if (n == 0 || n > 16 || entries.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "literal has " + std::to_string(entries.size()) +
                                                  " entries, expected n^2");
  }
  return Matrix(field, static_cast<int>(n), std::move(entries));
}

BigInt gl_order(int n, long long q) {
  BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
  BigInt result = 1;
  BigInt qi = 1;
  for (int i = 0; i < n; ++i) {
    result *= (qn - qi);
    qi *= q;
  }
  return result;
}

Rational phi(int n, long long q) {
  Rational result = 1;
  BigInt qi = 1;
  for (int i = 1; i <= n; ++i) {
    qi *= q;
    result *= Rational(qi - 1, qi);
  }
  return result;
}

GroupCounts group_counts(int n, long long q) {
  GroupCounts c;
  c.gl_order = gl_order(n, q);
  c.sl_order = c.gl_order / (q - 1);
  c.ring_order = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n * n));
  c.phi = phi(n, q);
  return c;
}

std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

bool MatrixFilter::accepts(const Matrix& m) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Invertible: return !det(m).is_zero();
    case Kind::Det: return det(m) == alpha;
  }
  return false;
}

std::uint64_t enumerable_ring_size(int n, const FieldSpec& field) {
  auto size = checked_pow(static_cast<std::uint64_t>(field.q()), n * n);
  if (!size || *size > kMaxEnumeratedRing) {
    throw Error(ErrorCode::TooLarge, "Mat_" + std::to_string(n) + "(F_" +
                                         std::to_string(field.q()) +
                                         ") exceeds the 2^20 enumeration limit");
  }
  return *size;
}

void for_each_matrix(const Field& field, int n, MatrixFilter filter,
                     const std::function<void(const Matrix&)>& visit, std::uint64_t lo,
                     std::uint64_t hi) {
  hi = std::min(hi, enumerable_ring_size(n, *field));
  for (std::uint64_t code = lo; code < hi; ++code) {
    Matrix m = Matrix::from_code(field, n, code);
    if (filter.accepts(m)) visit(m);
  }
}

std::vector<Matrix> enumerate_matrices(const Field& field, int n, MatrixFilter filter,
                                       std::uint64_t lo, std::uint64_t hi) {
  std::vector<Matrix> out;
  for_each_matrix(field, n, filter, [&](const Matrix& m) { out.push_back(m); }, lo, hi);
  return out;
}

MatrixSet collect_matrix_set(const Field& field, int n, MatrixFilter filter) {
  MatrixSet set;
  set.n = n;
  set.q = field->q();
  for_each_matrix(field, n, filter, [&](const Matrix& m) {
    set.codes.push_back(m.code());
    for (auto e : m.entries()) set.entries.push_back(static_cast<std::uint8_t>(e.code));
  });
  return set;
}

}  // namespace matring
