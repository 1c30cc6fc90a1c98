#pragma once

// Dense two-phase simplex for small LPs:  min c.x  s.t.  A x = b,  x >= 0.
// Used for the marking-equation bound of the alignment search.

#include <optional>
#include <vector>

namespace checkmine::lp {

struct Problem {
    int rows = 0;
    int cols = 0;
    std::vector<double> a; // row-major rows x cols
    std::vector<double> b;
    std::vector<double> c;

    double& at(int r, int col) { return a[static_cast<std::size_t>(r) * cols + col]; }
};

struct Solution {
    double objective = 0.0;
    std::vector<double> x;
};

/// nullopt when infeasible. The objective must be bounded below on the
/// feasible set (true for nonnegative costs).
std::optional<Solution> solve(const Problem& p);

} // namespace checkmine::lp
