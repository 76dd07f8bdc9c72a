#pragma once

#include <utility>
#include <vector>

#include "sigpoly/rational.hpp"

namespace sigpoly {

struct FeasibilityResult {
    bool feasible = false;
    /// Basic columns with positive value (column index, value) when feasible.
    std::vector<std::pair<int, Rational>> solution;
    /// When infeasible: y with y.A_j <= 0 for every column and y.b > 0.
    std::vector<Rational> farkas;
    int iterations = 0;
};

/// Exact phase-one simplex (Bland's rule) for A x = b, x >= 0, where A has 0/1 entries.
/// Column j holds ones at the row indices columns[j]; b must be non-negative.
FeasibilityResult zero_one_feasibility(int rows, const std::vector<std::vector<int>>& columns,
                                       const std::vector<Rational>& b);

}  // namespace sigpoly
