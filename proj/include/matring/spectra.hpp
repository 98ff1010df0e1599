#pragma once

// Closed-form spectra on Mat_2(F_q): strongly regular parameters of the unit
// graph, the special-unit spectrum through Kloosterman sums, and the
// character-sum identities behind them.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "matring/cayley.hpp"

namespace matring {

struct SrgParams {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t a = 0;  // common neighbours of adjacent pairs
  std::int64_t c = 0;  // common neighbours of non-adjacent pairs

  /// k (k - a - 1) == (v - k - 1) c
  bool feasible() const { return k * (k - a - 1) == (v - k - 1) * c; }
  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

/// (q^4, q^4 - q^3 - q^2 + q, q^4 - 2q^3 - q^2 + 3q, q^4 - 2q^3 + q)
SrgParams srg_params_unit_mat2(std::int64_t q);

inline constexpr std::uint64_t kMaxSrgVertices = 10000;

/// Counts common neighbours over all ordered vertex pairs; returns the
/// parameters iff both counts are constant and the graph is neither empty
/// nor complete. Throws DirectedGraph or TooLarge.
std::optional<SrgParams> srg_check_bruteforce(const CayleyGraphSpec& g);

struct SrgSpectrum {
  double k = 0;
  double lambda2 = 0;
  double lambda3 = 0;
  std::int64_t m2 = 0;
  std::int64_t m3 = 0;
  bool exact = false;  // discriminant is a perfect square
};

/// Eigenvalues (a - c +- sqrt(D)) / 2 with D = (a - c)^2 + 4 (k - c) and the
/// standard multiplicities. Throws InfeasibleParams for non-integral ones.
SrgSpectrum srg_eigen_from_params(const SrgParams& p);

struct KloostermanValue {
  FieldElem delta;
  double value = 0;
  double imag = 0;  // residual imaginary part of the defining sum
  bool within_weil() const;
  double weil_bound = 0;  // 2 sqrt(q)
};

/// K(delta) = sum_{a in F_q^*} chi(a + delta / a). Throws ZeroDelta.
KloostermanValue kloosterman(FieldElem delta, const Field& field);

/// {q^3 - q : 1}, {-q : q^3 + q^2 - q - 1}, {q K(delta) : q^3 - q} per delta.
SpectrumReport sl2_spectrum_closed_form(const Field& field);

/// Unit graph on Mat_2(F_q): {q^4-q^3-q^2+q : 1}, {q : q^4-q^3-q^2+q}, {q-q^2 : q^3+q^2-q-1}.
std::vector<SpectrumEntry> unit_mat2_spectrum_closed_form(std::int64_t q);

struct CharSumCheck {
  std::string name;
  std::optional<FieldElem> delta;
  std::complex<double> computed;
  double expected = 0;
  bool ok = false;
};

/// Evaluates by enumeration, against their closed forms (tolerance 1e-9):
///   sum_{GL_2} chi(s11) = q - q^2,  sum_{GL_2} chi(s11 + s22) = q,
///   sum_{SL_2} chi(s11) = -q,       sum_{SL_2} chi(s11 + delta s22) = q K(delta).
std::vector<CharSumCheck> char_sum_identities(const Field& field);

/// x -> M x with M = diag(1, ..., 1, alpha); maps G_1 onto G_alpha.
/// result[code(x)] = code(M x). Throws ZeroAlpha.
std::vector<std::uint64_t> iso_g_alpha(FieldElem alpha, const Field& field, int n = 2);

/// Exhaustive check that `map` sends every edge of G_1 to an edge of G_alpha
/// and every non-edge to a non-edge.
bool check_isomorphism(const std::vector<std::uint64_t>& map, FieldElem alpha, const Field& field,
                       int n = 2);

}  // namespace matring
