#pragma once

// Finite fields F_q, q = p^k <= 256, with table-driven arithmetic.
//
// Elements are integer codes in [0, q): the base-p digits of the code
// (little-endian) are the coefficients of the polynomial representative
// modulo the field's irreducible polynomial. Code 0 is zero, code 1 is one,
// and codes 0..p-1 form the prime subfield.

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace matring {

struct FieldElem {
  std::uint16_t code = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint16_t c) : code(c) {}

  constexpr bool is_zero() const { return code == 0; }
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

class FieldSpec {
 public:
  static constexpr int kMaxOrder = 256;

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }
  /// Monic irreducible polynomial, little-endian, length k + 1.
  std::span<const int> irreducible() const { return irreducible_; }

  /// Validates a raw code; throws FieldMismatch when it is out of range.
  FieldElem elem(int code) const;
  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }

  FieldElem add(FieldElem a, FieldElem b) const { return FieldElem{add_[idx(a, b)]}; }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem neg(FieldElem a) const { return FieldElem{neg_[check(a)]}; }
  FieldElem mul(FieldElem a, FieldElem b) const { return FieldElem{mul_[idx(a, b)]}; }
  /// Throws ZeroInverse for a == 0.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;

  /// Absolute trace F_q -> F_p; the result is a prime-subfield code.
  FieldElem trace(FieldElem a) const { return FieldElem{trace_[check(a)]}; }

  /// Canonical additive character exp(2 pi i tr(a) / p).
  std::complex<double> character(FieldElem a) const { return roots_[trace_[check(a)]]; }
  /// exp(2 pi i t / p) for t in [0, p).
  std::complex<double> root_of_unity(int t) const { return roots_[static_cast<std::size_t>(t)]; }

  /// Codes 0..q-1 in increasing order.
  std::vector<FieldElem> elements() const;
  std::vector<FieldElem> units() const;

  /// Raw q*q tables, row-major by first operand, used by the kernels.
  std::span<const std::uint8_t> add_table() const { return add_; }
  std::span<const std::uint8_t> mul_table() const { return mul_; }
  std::span<const std::uint8_t> neg_table() const { return neg_; }
  std::span<const std::uint8_t> trace_table() const { return trace_; }

  /// `p=<int> k=<int> poly=<c0,...,ck>`
  std::string config_string() const;

  bool operator==(const FieldSpec& other) const {
    return p_ == other.p_ && k_ == other.k_ && irreducible_ == other.irreducible_;
  }

 private:
  friend std::shared_ptr<const FieldSpec> make_field(int, int, std::optional<std::vector<int>>);
  FieldSpec() = default;

  std::size_t check(FieldElem a) const;
  std::size_t idx(FieldElem a, FieldElem b) const {
    return check(a) * static_cast<std::size_t>(q_) + check(b);
  }

  int p_ = 0;
  int k_ = 0;
  int q_ = 0;
  std::vector<int> irreducible_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
  std::vector<std::uint8_t> inv_;
  std::vector<std::uint8_t> trace_;
  std::vector<std::complex<double>> roots_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Builds F_{p^k}. Without `irreducible`, a built-in polynomial is used for
/// q in {4, 8, 9, 16, 25, 27}; every polynomial is re-checked for
/// irreducibility. Errors: NonPrimeP, ReduciblePolynomial, UnsupportedSize.
Field make_field(int p, int k, std::optional<std::vector<int>> irreducible = std::nullopt);

/// Factors the prime power q and builds the field with the default polynomial.
/// Throws UnsupportedSize when q is not a prime power.
Field make_field_for_order(int q);

/// Parses `p=<int> k=<int> poly=<c0,...,ck>` (poly optional).
Field parse_field_config(std::string_view text);

bool same_field(const FieldSpec& a, const FieldSpec& b);

bool is_prime(long long n);
/// Returns (p, k) with q = p^k, or nullopt if q is not a prime power.
std::optional<std::pair<int, int>> prime_power(long long q);

}  // namespace matring
