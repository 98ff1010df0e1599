#pragma once

// Square matrices over F_q, exact elimination, enumeration of Mat_n(F_q)
// and its unit subsets, and the group-order formulas.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "matring/gf.hpp"

namespace matring {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Matrix {
 public:
  /// Zero matrix.
  Matrix(Field field, int n);
  Matrix(Field field, int n, std::vector<FieldElem> entries);

  static Matrix identity(Field field, int n);
  static Matrix diagonal(Field field, std::span<const FieldElem> diag);
  /// Row-major field codes; throws FieldMismatch for out-of-range codes.
  static Matrix from_codes(Field field, int n, std::span<const int> codes);
  static Matrix from_codes(Field field, int n, std::initializer_list<int> codes) {
    return from_codes(std::move(field), n, std::span<const int>(codes.begin(), codes.size()));
  }
  /// Inverse of code(): entries are the base-q digits of `code`.
  static Matrix from_code(Field field, int n, std::uint64_t code);

  int n() const { return n_; }
  const Field& field() const { return field_; }
  const FieldSpec& spec() const { return *field_; }

  FieldElem operator()(int r, int c) const { return entries_[index(r, c)]; }
  void set(int r, int c, FieldElem v);
  std::span<const FieldElem> entries() const { return entries_; }

  /// sum_i entries[i] * q^i. Throws TooLarge when q^(n^2) exceeds 2^64.
  std::uint64_t code() const;

  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
  }

  Field field_;
  int n_;
  std::vector<FieldElem> entries_;
};

FieldElem det(const Matrix& m);
int rank(const Matrix& m);
FieldElem trace(const Matrix& m);

Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_neg(const Matrix& a);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_scale(FieldElem s, const Matrix& a);
/// Throws SingularMatrix when det(m) == 0.
Matrix mat_inv(const Matrix& m);

inline Matrix operator+(const Matrix& a, const Matrix& b) { return mat_add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return mat_sub(a, b); }
inline Matrix operator-(const Matrix& a) { return mat_neg(a); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

/// [[a, 0], [0, b]]
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// Square sub-block starting at (offset, offset).
Matrix sub_block(const Matrix& m, int offset, int size);

/// Matrix literal `n;q;e0,e1,...` with row-major element codes.
std::string to_literal(const Matrix& m);
Matrix parse_matrix_literal(std::string_view text, const Field& field);

// ---------------------------------------------------------------------------
// Counting

struct GroupCounts {
  BigInt gl_order;
  BigInt sl_order;
  BigInt ring_order;
  Rational phi;
};

/// (q^n - 1)(q^n - q)...(q^n - q^(n-1))
BigInt gl_order(int n, long long q);
/// prod_{i=1..n} (1 - q^-i), exactly.
Rational phi(int n, long long q);
GroupCounts group_counts(int n, long long q);
/// "a/b"
std::string rational_string(const Rational& r);

// ---------------------------------------------------------------------------
// Enumeration

/// Enumerations refuse rings with more than 2^20 elements.
inline constexpr std::uint64_t kMaxEnumeratedRing = std::uint64_t{1} << 20;

struct MatrixFilter {
  enum class Kind { All, Invertible, Det };
  Kind kind = Kind::All;
  FieldElem alpha{};

  static MatrixFilter all() { return {}; }
  static MatrixFilter invertible() { return {Kind::Invertible, {}}; }
  static MatrixFilter det_equals(FieldElem a) { return {Kind::Det, a}; }

  bool accepts(const Matrix& m) const;
};

/// q^(n^2); throws TooLarge above kMaxEnumeratedRing.
std::uint64_t enumerable_ring_size(int n, const FieldSpec& field);

/// Matrices with code in [lo, hi) passing `filter`, in increasing code order.
/// `hi` is clamped to the ring size.
std::vector<Matrix> enumerate_matrices(const Field& field, int n, MatrixFilter filter,
                                       std::uint64_t lo = 0,
                                       std::uint64_t hi = UINT64_MAX);

/// Streams matrices without materializing the list.
void for_each_matrix(const Field& field, int n, MatrixFilter filter,
                     const std::function<void(const Matrix&)>& visit, std::uint64_t lo = 0,
                     std::uint64_t hi = UINT64_MAX);

// ---------------------------------------------------------------------------
// Flat matrix sets used by the enumeration kernels.

/// An indexable set of n x n matrices stored as contiguous element codes.
struct MatrixSet {
  int n = 0;
  int q = 0;
  std::vector<std::uint8_t> entries;  // size() * n * n codes, row-major per matrix
  std::vector<std::uint64_t> codes;   // strictly increasing

  std::size_t size() const { return codes.size(); }
  std::span<const std::uint8_t> at(std::size_t i) const {
    const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    return {entries.data() + i * nn, nn};
  }
};

MatrixSet collect_matrix_set(const Field& field, int n, MatrixFilter filter);

}  // namespace matring
