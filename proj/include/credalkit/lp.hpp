#pragma once

#include <vector>

namespace credalkit::detail {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Minimize c.x subject to A x = b, x >= 0.
// Dense two-phase simplex with Bland's rule; sized for the small systems the
// geometry layer produces (tens of rows, at most a few hundred columns).
LpSolution solve_lp(std::vector<std::vector<double>> A, std::vector<double> b,
                    const std::vector<double>& c);

}  // namespace credalkit::detail
