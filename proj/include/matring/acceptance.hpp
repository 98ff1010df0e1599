#pragma once

// The acceptance suite: one check per criterion, optionally restricted to a
// single (n, q).

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace matring::acceptance {

struct Scope {
  std::optional<int> n;
  std::optional<int> q;

  bool includes(int n_, int q_) const { return (!n || *n == n_) && (!q || *q == q_); }
  bool includes_q(int q_) const { return !q || *q == q_; }
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool skipped = false;  // nothing in scope
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const Scope& scope = {});
std::vector<CriterionResult> run_all(const Scope& scope = {},
                                     const std::function<void(const CriterionResult&)>& on_done = {});

/// "criterion <id> <name>: PASS|FAIL|SKIP (<seconds> s) <detail>"
std::string format_line(const CriterionResult& r);

}  // namespace matring::acceptance
