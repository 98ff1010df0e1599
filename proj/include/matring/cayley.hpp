#pragma once

// Cayley digraphs Cay(Mat_n(F_q), S) on the additive group, with S the
// units, or the matrices of one fixed nonzero determinant.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "matring/matrix.hpp"

namespace matring {

struct Connection {
  enum class Kind { Invertible, Det };
  Kind kind = Kind::Invertible;
  FieldElem alpha{1};

  static Connection invertible() { return {}; }
  static Connection det_equals(FieldElem a) { return {Kind::Det, a}; }

  /// "gl" or "det:<alpha>"
  std::string label() const;
  MatrixFilter filter() const;
};

class CayleyGraphSpec {
 public:
  /// Throws ZeroAlpha for a determinant-0 connection.
  CayleyGraphSpec(Field field, int n, Connection connection);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  const Connection& connection() const { return connection_; }

  BigInt vertex_count() const;
  BigInt degree() const;
  /// -S == S: units always, determinant slices iff n is even or p == 2.
  bool is_symmetric() const;

  /// Enumerated connection set (computed on first use).
  const MatrixSet& connection_set() const;

 private:
  Field field_;
  int n_;
  Connection connection_;
  mutable std::optional<MatrixSet> set_;
};

bool adjacent(const CayleyGraphSpec& g, const Matrix& u, const Matrix& v);

/// sum_{s in S} chi(Tr(a s)).
std::complex<double> char_eigenvalue(const CayleyGraphSpec& g, const Matrix& a);

/// Eigenvalue from a histogram of trace values: sum_t hist[t] * exp(2 pi i t / p).
std::complex<double> eigenvalue_from_histogram(const FieldSpec& f,
                                               const std::vector<std::uint64_t>& hist);

struct SpectrumEntry {
  std::string label;                     // "rank<r>" or "det:<delta>"
  std::optional<Matrix> representative;  // absent in merged views
  std::complex<double> eigenvalue;
  std::uint64_t multiplicity = 0;
};

struct SpectrumReport {
  std::string graph_connection;
  int n = 0;
  int q = 0;
  std::vector<SpectrumEntry> classes;
  std::vector<SpectrumEntry> merged;  // sorted by real part, descending
  bool all_real = false;
  bool all_integer = false;

  std::uint64_t multiplicity_sum() const;
  std::size_t distinct_count() const { return merged.size(); }
};

inline constexpr double kMergeTolerance = 1e-9;

/// Groups equal eigenvalues (|a - b| < tolerance) and sorts by real part, descending.
std::vector<SpectrumEntry> merge_spectrum(const std::vector<SpectrumEntry>& entries,
                                          double tolerance = kMergeTolerance);

/// One entry per equivalence class: rank classes below full rank, then the
/// full-rank class (units) or one class per determinant (determinant slices).
/// Multiplicities come from an exact census of the ring.
SpectrumReport spectrum_by_classes(const CayleyGraphSpec& g);

struct Reachability {
  bool connected = false;
  std::optional<int> diameter;  // set when connected
  int eccentricity = 0;         // of vertex 0 over reached vertices
};

/// BFS from vertex 0. One source suffices: translation u -> u + h is an
/// automorphism, so distances from 0 determine all distances.
Reachability bfs_diameter(const CayleyGraphSpec& g);

/// Out-distances from every vertex (all-pairs BFS), for cross-checking.
std::vector<std::vector<int>> all_pairs_distances(const CayleyGraphSpec& g);

inline constexpr std::uint64_t kMaxBfsVertices = 100000;
inline constexpr std::uint64_t kMaxDenseVertices = 4096;

/// Eigenvalues of the materialized adjacency matrix via Eigen, sorted by
/// real part (ascending), then imaginary part.
std::vector<std::complex<double>> dense_spectrum_oracle(const CayleyGraphSpec& g);

struct GapBound {
  double nstar_exact = 0;  // |V| / |S| * max nontrivial |eigenvalue|
  double nstar_weil = 0;   // closed-form upper bound
};

GapBound spectral_gap_bound(const CayleyGraphSpec& g);

}  // namespace matring
