#include "credalkit/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "credalkit/errors.hpp"

namespace credalkit::detail {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr double kPhase1FeasTol = 1e-8;
constexpr int kMaxIterations = 200000;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Tableau {
  // rows x (ncols + 1); last column is the right-hand side.
  std::vector<std::vector<double>> t;
  std::vector<std::size_t> basis;   // basic column per row
  std::vector<char> is_basic;       // per column
  std::size_t ncols = 0;

  double rhs(std::size_t i) const { return t[i].back(); }

  void pivot(std::size_t pr, std::size_t pc) {
    std::vector<double>& prow = t[pr];
    const double piv = prow[pc];
    for (double& v : prow) v /= piv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == pr) continue;
      const double f = t[i][pc];
      if (f == 0.0) continue;
      std::vector<double>& row = t[i];
      for (std::size_t j = 0; j <= ncols; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;  // cancel exactly
    }
    is_basic[basis[pr]] = 0;
    is_basic[pc] = 1;
    basis[pr] = pc;
  }
};

// Runs simplex iterations for the given cost vector, considering only columns
// < allowed as entering candidates (used to lock out artificials in phase 2).
// Returns false on unboundedness.
bool run_phase(Tableau& tab, const std::vector<double>& cost, std::size_t allowed) {
  const std::size_t m = tab.t.size();
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t enter = kNone;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (tab.is_basic[j]) continue;
      double r = cost[j];
      for (std::size_t i = 0; i < m; ++i) {
        const double cb = cost[tab.basis[i]];
        if (cb != 0.0) r -= cb * tab.t[i][j];
      }
      if (r < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter == kNone) return true;

    // Ratio test; break exact ties by smallest basis index (Bland). A rhs
    // that rounding pushed below zero counts as zero so feasibility is
    // restored by a degenerate pivot instead of a negative ratio winning.
    std::size_t leave = kNone;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = tab.t[i][enter];
      if (a <= kPivotTol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      if (leave == kNone || ratio < best ||
          (ratio == best && tab.basis[i] < tab.basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == kNone) return false;
    tab.pivot(leave, enter);
  }
  fail(errc::numeric_failure, "lp: simplex iteration limit exceeded");
}

}  // namespace

LpSolution solve_lp(std::vector<std::vector<double>> A, std::vector<double> b,
                    const std::vector<double>& c) {
  const std::size_t n = c.size();
  const std::size_t m = A.size();
  if (b.size() != m) fail(errc::invalid_input, "lp: rhs size mismatch");
  for (const auto& row : A) {
    if (row.size() != n) fail(errc::invalid_input, "lp: ragged constraint matrix");
  }

  // Normalize to b >= 0 so the artificial basis is feasible.
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      for (double& v : A[i]) v = -v;
      b[i] = -b[i];
    }
  }

  const std::size_t total = n + m;  // structural + one artificial per row
  Tableau tab;
  tab.ncols = total;
  tab.t.assign(m, std::vector<double>(total + 1, 0.0));
  tab.basis.resize(m);
  tab.is_basic.assign(total, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = A[i][j];
    tab.t[i][n + i] = 1.0;
    tab.t[i][total] = b[i];
    tab.basis[i] = n + i;
    tab.is_basic[n + i] = 1;
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost1(total, 0.0);
  for (std::size_t j = n; j < total; ++j) cost1[j] = 1.0;
  if (!run_phase(tab, cost1, total)) {
    fail(errc::numeric_failure, "lp: phase-1 unbounded");
  }
  double infeas = 0.0;
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    if (tab.basis[i] >= n) infeas += tab.rhs(i);
  }
  if (infeas > kPhase1FeasTol) return {LpStatus::infeasible, 0.0, {}};

  // Drive remaining artificials out of the basis; rows that cannot pivot are
  // linearly dependent and get dropped.
  for (std::size_t i = 0; i < tab.t.size();) {
    if (tab.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t pc = kNone;
    for (std::size_t j = 0; j < n; ++j) {
      if (!tab.is_basic[j] && std::abs(tab.t[i][j]) > kPivotTol) {
        pc = j;
        break;
      }
    }
    if (pc != kNone) {
      tab.pivot(i, pc);
      ++i;
    } else {
      tab.is_basic[tab.basis[i]] = 0;
      tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase 2 over structural columns only.
  std::vector<double> cost2(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
  if (!run_phase(tab, cost2, n)) return {LpStatus::unbounded, 0.0, {}};

  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    if (tab.basis[i] < n) sol.x[tab.basis[i]] = std::max(0.0, tab.rhs(i));
  }
  for (std::size_t j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];
  return sol;
}

}  // namespace credalkit::detail
