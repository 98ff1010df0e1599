#pragma once

// Determinant differences between large subsets of Mat_2(F_q), and the
// product-difference sets (A - B)(C - D) in F_q.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "matring/matrix.hpp"

namespace matring {

/// Sorted, deduplicated matrix codes.
class SubsetOfRing {
 public:
  /// Sorts and deduplicates; throws FieldMismatch for codes outside the ring.
  SubsetOfRing(Field field, int n, std::vector<std::uint64_t> codes);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  const std::vector<std::uint64_t>& codes() const { return codes_; }
  std::size_t size() const { return codes_.size(); }

  MatrixSet to_matrix_set() const;

 private:
  Field field_;
  int n_;
  std::vector<std::uint64_t> codes_;
};

/// Sorted, deduplicated element codes.
class SubsetOfField {
 public:
  SubsetOfField(Field field, std::vector<int> codes);

  static SubsetOfField whole(const Field& field);

  const Field& field() const { return field_; }
  const std::vector<FieldElem>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

 private:
  Field field_;
  std::vector<FieldElem> elems_;
};

struct GapThreshold {
  double weil = 0;         // 2 q^3 sqrt(q) / (q - 1)
  double proof_nstar = 0;  // 2 q^5 sqrt(q) / (q^3 - q)
  double exact = 0;        // from the computed spectrum of Det(1)
};

GapThreshold gap_threshold(const Field& field);

inline constexpr std::uint64_t kMaxBruteForcePairs = 100000000;

struct DetWitness {
  Matrix m;
  Matrix n;
};

/// First (M, N) in (code M, code N) order with det(M - N) == alpha.
/// 2 x 2 only. Throws DimensionMismatch, ZeroAlpha, TooLarge.
std::optional<DetWitness> det_difference_witness(const SubsetOfRing& x, const SubsetOfRing& y,
                                                 FieldElem alpha);

struct SumProdResult {
  std::vector<FieldElem> set;  // (A - B)(C - D), increasing codes
  bool covers_all = false;

  // sqrt[4](|A||B||C||D|) > sqrt(2) q^(5/4) / sqrt(q - 1)
  double four_set_threshold = 0;
  bool four_set_hypothesis = false;
  bool four_set_vacuous = false;
  // |A| > (3/2) q^(3/4), read with B = C = D = A
  double single_set_threshold = 0;
  bool single_set_hypothesis = false;
  bool single_set_vacuous = false;
};

/// Throws TooLarge when |A||B||C||D| > 10^8, FieldMismatch on mixed fields.
SumProdResult sumprod_cover(const SubsetOfField& a, const SubsetOfField& b,
                            const SubsetOfField& c, const SubsetOfField& d);

/// { M : m11 in A, m22 in C, m21 = 0 }, m12 free.
SubsetOfRing embed_field_subsets(const SubsetOfField& a, const SubsetOfField& c);

/// One decimal code per line; `#` starts a comment. Throws ParseError.
std::vector<std::uint64_t> parse_code_list(const std::string& text);
std::vector<std::uint64_t> read_code_file(const std::string& path);

/// Uniform random subsets of a given size.
SubsetOfRing random_ring_subset(const Field& field, int n, std::size_t size, std::mt19937_64& rng);
SubsetOfField random_field_subset(const Field& field, std::size_t size, std::mt19937_64& rng);

/// { A : a21 = a22 = 0 } in Mat_2(F_q); no two members differ by a unit.
SubsetOfRing singular_row_subset(const Field& field);

}  // namespace matring
