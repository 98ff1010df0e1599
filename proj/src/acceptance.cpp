#include "matring/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <unordered_set>

#include "matring/cayley.hpp"
#include "matring/decomp.hpp"
#include "matring/error.hpp"
#include "matring/kernels.hpp"
#include "matring/normal_form.hpp"
#include "matring/spectra.hpp"
#include "matring/sumprod.hpp"

namespace matring::acceptance {
namespace {

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failed = 0;
  std::string first_failure;
  bool any = false;  // at least one case was in scope

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failed++ == 0) first_failure = what;
  }
};

std::string case_name(int n, int q) { return "(n=" + std::to_string(n) + ",q=" + std::to_string(q) + ")"; }

bool near(std::complex<double> a, std::complex<double> b, double tol) { return std::abs(a - b) < tol; }

// -- 1 --------------------------------------------------------------------

void counting(const Scope& scope, Tally& t) {
  std::vector<std::pair<int, int>> cases;
  for (int q : {2, 3, 4, 5, 7, 8, 9}) cases.emplace_back(1, q);
  for (int q : {2, 3, 4, 5}) cases.emplace_back(2, q);
  cases.emplace_back(3, 2);
  cases.emplace_back(3, 3);
  for (auto [n, q] : cases) {
    if (!scope.includes(n, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    const auto census = kernels::omp::ring_census(*f, n, 0, enumerable_ring_size(n, *f));
    const BigInt gl = gl_order(n, q);
    t.expect(BigInt(census.by_rank[static_cast<std::size_t>(n)]) == gl, "gl_order " + case_name(n, q));
    for (int a = 1; a < q; ++a) {
      t.expect(BigInt(census.by_det[static_cast<std::size_t>(a)]) == gl / (q - 1),
               "|Det(" + std::to_string(a) + ")| " + case_name(n, q));
    }
  }
}

// -- 2 --------------------------------------------------------------------

// Upper bound for exp(-x), 0 < x < 1: alternating partial sum ending on a positive term.
Rational exp_neg_upper(const Rational& x, int terms) {
  Rational sum = 0;
  Rational term = 1;
  for (int k = 0; k <= 2 * terms; ++k) {
    sum += term;
    term = -term * x / (k + 1);
  }
  return sum;
}

void phi_bound(const Scope& scope, Tally& t) {
  if (!scope.includes_q(3)) return;
  t.any = true;
  Rational prev = 2;
  for (int n = 1; n <= 20; ++n) {
    const Rational cur = phi(n, 3);
    t.expect(cur < prev, "phi(" + std::to_string(n) + ",3) not decreasing");
    prev = cur;
  }
  const Rational p20 = phi(20, 3);
  t.expect(p20 > Rational(1, 2), "phi(20,3) > 1/2");
  // -ln phi < 0.581  <=>  phi > exp(-0.581)
  t.expect(p20 > exp_neg_upper(Rational(581, 1000), 12), "-ln phi(20,3) < 0.581");
}

// -- 3 --------------------------------------------------------------------

void check_normal_form(const Matrix& a, Tally& t) {
  const auto w = sl_normal_form(a);
  const int r = rank(a);
  const Matrix expected = canonical_normal_form(a.field(), a.n(), r, r == a.n() ? det(a) : a.spec().one());
  const bool ok = w.P * a * w.Q == w.D && det(w.P) == a.spec().one() && det(w.Q) == a.spec().one() &&
                  w.D == expected && w.rank == r;
  t.expect(ok, "normal form of " + to_literal(a));
}

void normal_form(const Scope& scope, Tally& t) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    if (!scope.includes(n, q)) continue;
    t.any = true;
    for_each_matrix(make_field_for_order(q), n, MatrixFilter::all(),
                    [&](const Matrix& a) { check_normal_form(a, t); });
  }
  std::mt19937_64 rng(0x6e66);
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 5}, {3, 2}, {3, 3}}) {
    if (!scope.includes(n, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    std::uniform_int_distribution<std::uint64_t> pick(0, enumerable_ring_size(n, *f) - 1);
    for (int i = 0; i < 10000; ++i) check_normal_form(Matrix::from_code(f, n, pick(rng)), t);
  }
  if (scope.includes(2, 2)) {
    // Brute-force orbits under (P, Q) in SL_2(F_2) x SL_2(F_2).
    const Field f = make_field_for_order(2);
    const auto sl = enumerate_matrices(f, 2, MatrixFilter::det_equals(f->one()));
    const auto all = enumerate_matrices(f, 2, MatrixFilter::all());
    for (const auto& a : all) {
      std::set<std::uint64_t> orbit;
      for (const auto& p : sl) {
        for (const auto& q : sl) orbit.insert((p * a * q).code());
      }
      for (const auto& b : all) {
        t.expect(is_sl_equivalent(a, b) == orbit.contains(b.code()),
                 "is_sl_equivalent " + to_literal(a) + " ~ " + to_literal(b));
      }
    }
  }
}

// -- 4 --------------------------------------------------------------------

void decompositions(const Scope& scope, Tally& t) {
  const std::vector<std::pair<int, int>> cases = {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}};
  for (auto [n, q] : cases) {
    if (!scope.includes(n, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    for_each_matrix(f, n, MatrixFilter::all(), [&](const Matrix& a) {
      try {
        const auto w = sum_of_two_units(a);
        t.expect(verify_decomposition(w) && w.summands.size() == 2, "two units " + to_literal(a));
      } catch (const Error& e) {
        t.expect(false, "two units " + to_literal(a) + ": " + e.what());
      }
      if (a.is_zero()) return;
      try {
        const auto w = sum_of_two_sl(a);
        t.expect(verify_decomposition(w) && w.summands.size() == 2, "two SL " + to_literal(a));
      } catch (const Error& e) {
        t.expect(false, "two SL " + to_literal(a) + ": " + e.what());
      }
    });
    const auto zero = sum_of_sl_zero(f, n);
    const std::size_t want = (n % 2 == 0 || f->p() == 2) ? 2 : 3;
    t.expect(verify_decomposition(zero) && zero.summands.size() == want, "zero rule " + case_name(n, q));
  }
  if (scope.includes(3, 3)) {
    // S1 + S2 = 0 forces S2 = -S1; no S in SL_3(F_3) has det(-S) = 1.
    const Field f = make_field_for_order(3);
    bool found = false;
    for_each_matrix(f, 3, MatrixFilter::det_equals(f->one()),
                    [&](const Matrix& s) { found = found || det(-s) == f->one(); });
    t.expect(!found, "two-summand SL decomposition of 0 in Mat_3(F_3)");
  }
}

// -- 5 --------------------------------------------------------------------

std::vector<std::complex<double>> expand(const std::vector<SpectrumEntry>& entries) {
  std::vector<std::complex<double>> out;
  for (const auto& e : entries) out.insert(out.end(), e.multiplicity, e.eigenvalue);
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

void unit_spectra(const Scope& scope, Tally& t) {
  for (int q : {2, 3, 4, 5, 7}) {
    if (!scope.includes(2, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    const CayleyGraphSpec g(f, 2, Connection::invertible());
    const auto report = spectrum_by_classes(g);
    const auto closed = unit_mat2_spectrum_closed_form(q);
    bool same = report.merged.size() == closed.size();
    for (std::size_t i = 0; same && i < closed.size(); ++i) {
      same = near(report.merged[i].eigenvalue, closed[i].eigenvalue, 1e-9) &&
             report.merged[i].multiplicity == closed[i].multiplicity;
    }
    t.expect(same, "unit spectrum closed form q=" + std::to_string(q));
    if (q <= 3) {
      const auto dense = dense_spectrum_oracle(g);
      const auto mine = expand(report.classes);
      bool ok = dense.size() == mine.size();
      for (std::size_t i = 0; ok && i < dense.size(); ++i) ok = near(dense[i], mine[i], 1e-6);
      t.expect(ok, "dense oracle q=" + std::to_string(q));
    }
  }
}

// -- 6 --------------------------------------------------------------------

void srg(const Scope& scope, Tally& t) {
  for (int q : {2, 3, 4, 5}) {
    if (!scope.includes(2, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    const auto unit = srg_check_bruteforce(CayleyGraphSpec(f, 2, Connection::invertible()));
    t.expect(unit && *unit == srg_params_unit_mat2(q), "unit graph SRG q=" + std::to_string(q));
    const auto sl = srg_check_bruteforce(CayleyGraphSpec(f, 2, Connection::det_equals(f->one())));
    if (q == 5) {
      t.expect(!sl.has_value(), "SL graph q=5 must not be strongly regular");
    } else {
      t.expect(sl && sl->feasible(), "SL graph SRG q=" + std::to_string(q));
    }
  }
}

// -- 7 --------------------------------------------------------------------

void sl2_kloosterman(const Scope& scope, Tally& t) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    if (!scope.includes(2, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    const CayleyGraphSpec g(f, 2, Connection::det_equals(f->one()));
    const auto closed = sl2_spectrum_closed_form(f);
    const auto computed = spectrum_by_classes(g);
    const std::string at = " q=" + std::to_string(q);
    t.expect(computed.classes.size() == closed.classes.size(), "class count" + at);
    for (std::size_t i = 0; i < closed.classes.size(); ++i) {
      const auto& c = closed.classes[i];
      t.expect(near(char_eigenvalue(g, *c.representative), c.eigenvalue, 1e-9), "character sum " + c.label + at);
      if (i < computed.classes.size()) {
        const auto& m = computed.classes[i];
        t.expect(m.label == c.label && near(m.eigenvalue, c.eigenvalue, 1e-9) &&
                     m.multiplicity == c.multiplicity,
                 "class " + c.label + at);
      }
    }
    for (auto delta : f->units()) {
      const auto k = kloosterman(delta, f);
      t.expect(k.within_weil() && std::abs(k.imag) < 1e-9, "Kloosterman delta=" + std::to_string(delta.code) + at);
    }
  }
}

// -- 8 --------------------------------------------------------------------

void char_identities(const Scope& scope, Tally& t) {
  for (int q : {2, 3, 4, 5, 7}) {
    if (!scope.includes(2, q)) continue;
    t.any = true;
    for (const auto& c : char_sum_identities(make_field_for_order(q))) {
      t.expect(c.ok, c.name + " q=" + std::to_string(q));
    }
  }
}

// -- 9 --------------------------------------------------------------------

void diameters(const Scope& scope, Tally& t) {
  for (int q : {3, 4, 5, 7, 8, 9}) {
    if (!scope.includes(1, q)) continue;
    t.any = true;
    const auto r = bfs_diameter(CayleyGraphSpec(make_field_for_order(q), 1, Connection::invertible()));
    t.expect(r.diameter == 1, "unit graph diameter " + case_name(1, q));
  }
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    if (!scope.includes(n, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    t.expect(bfs_diameter(CayleyGraphSpec(f, n, Connection::invertible())).diameter == 2,
             "unit graph diameter " + case_name(n, q));
    t.expect(bfs_diameter(CayleyGraphSpec(f, n, Connection::det_equals(f->one()))).diameter == 2,
             "SL graph diameter " + case_name(n, q));
  }
  for (int q : {2, 3, 4, 5}) {
    if (!scope.includes(2, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    for (auto a : f->units()) {
      t.expect(bfs_diameter(CayleyGraphSpec(f, 2, Connection::det_equals(a))).connected,
               "G_" + std::to_string(a.code) + " connected q=" + std::to_string(q));
    }
  }
}

// -- 10 -------------------------------------------------------------------

void spectral_gap(const Scope& scope, Tally& t) {
  for (int q : {2, 3}) {
    if (!scope.includes(2, q)) continue;
    t.any = true;
    const Field f = make_field_for_order(q);
    const auto threshold = gap_threshold(f);
    const auto size = static_cast<std::size_t>(std::floor(threshold.exact)) + 1;
    std::mt19937_64 rng(0x9a9 + static_cast<std::uint64_t>(q));
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = random_ring_subset(f, 2, size, rng);
      const auto y = random_ring_subset(f, 2, size, rng);
      for (auto a : f->units()) {
        t.expect(det_difference_witness(x, y, a).has_value(),
                 "witness trial " + std::to_string(trial) + " alpha=" + std::to_string(a.code) +
                     " q=" + std::to_string(q));
      }
    }
    const auto non = singular_row_subset(f);
    for (auto a : f->units()) {
      t.expect(!det_difference_witness(non, non, a).has_value(), "non-example q=" + std::to_string(q));
    }
    t.expect(static_cast<double>(non.size()) < threshold.weil, "non-example size q=" + std::to_string(q));
  }
}

// -- 11 -------------------------------------------------------------------

void sum_product(const Scope& scope, Tally& t) {
  if (!scope.includes(2, 9)) return;
  t.any = true;
  const Field f = make_field_for_order(9);
  for (int missing = 0; missing < 9; ++missing) {
    std::vector<int> codes;
    for (int c = 0; c < 9; ++c) {
      if (c != missing) codes.push_back(c);
    }
    const SubsetOfField a(f, codes);
    const auto r = sumprod_cover(a, a, a, a);
    t.expect(r.single_set_hypothesis && r.covers_all, "(A-A)(A-A) without " + std::to_string(missing));
  }
  std::mt19937_64 rng(0x5e7);
  std::uniform_int_distribution<std::size_t> size(8, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_field_subset(f, size(rng), rng);
    const auto b = random_field_subset(f, size(rng), rng);
    const auto c = random_field_subset(f, size(rng), rng);
    const auto d = random_field_subset(f, size(rng), rng);
    const auto r = sumprod_cover(a, b, c, d);
    t.expect(r.four_set_hypothesis && r.covers_all, "four-set trial " + std::to_string(trial));
  }
}

struct Criterion {
  const char* name;
  void (*run)(const Scope&, Tally&);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"counting", counting},
    {"phi-bound", phi_bound},
    {"normal-form", normal_form},
    {"decompositions", decompositions},
    {"unit-spectra", unit_spectra},
    {"srg", srg},
    {"sl2-kloosterman", sl2_kloosterman},
    {"character-identities", char_identities},
    {"diameters", diameters},
    {"spectral-gap", spectral_gap},
    {"sum-product", sum_product},
};

}  // namespace

CriterionResult run_criterion(int id, const Scope& scope) {
  if (id < 1 || id > kCriterionCount) throw Error(ErrorCode::Unsupported, "no criterion " + std::to_string(id));
  const Criterion& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(scope, t);
  } catch (const std::exception& e) {
    t.expect(false, std::string("exception: ") + e.what());
    t.any = true;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.skipped = !t.any;
  r.passed = t.failed == 0;
  if (r.skipped) {
    r.detail = "no cases in scope";
  } else if (r.passed) {
    r.detail = std::to_string(t.checks) + " checks";
  } else {
    r.detail = std::to_string(t.failed) + "/" + std::to_string(t.checks) + " failed; first: " + t.first_failure;
  }
  return r;
}

std::vector<CriterionResult> run_all(const Scope& scope,
                                     const std::function<void(const CriterionResult&)>& on_done) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, scope));
    if (on_done) on_done(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.2f", r.seconds);
  const char* verdict = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
  return "criterion " + std::to_string(r.id) + " " + r.name + ": " + verdict + " (" + seconds + " s) " + r.detail;
}

}  // namespace matring::acceptance
