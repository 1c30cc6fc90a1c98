#include "simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace checkmine::lp {

namespace {

constexpr double kEps = 1e-9;

class Tableau {
public:
    explicit Tableau(const Problem& p) : m_(p.rows), n_(p.cols), width_(p.cols + p.rows + 1), t_(m_ * width_, 0.0)
    {
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const double sign = p.b[i] < 0 ? -1.0 : 1.0;
            for (int j = 0; j < n_; ++j)
                cell(i, j) = sign * p.a[static_cast<std::size_t>(i) * n_ + j];
            cell(i, n_ + i) = 1.0;
            rhs(i) = sign * p.b[i];
            basis_[i] = n_ + i;
        }
    }

    // Phase 1: minimize the sum of artificial variables.
    bool feasible()
    {
        std::vector<double> cost(n_ + m_, 0.0);
        for (int i = 0; i < m_; ++i)
            cost[n_ + i] = 1.0;
        optimize(cost, n_ + m_);
        if (objective(cost) > 1e-7)
            return false;
        // Pivot remaining (zero-valued) artificials out where possible.
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_)
                continue;
            for (int j = 0; j < n_; ++j)
                if (std::abs(cell(i, j)) > kEps) {
                    pivot(i, j);
                    break;
                }
        }
        return true;
    }

    Solution minimize(const std::vector<double>& c)
    {
        std::vector<double> cost(n_ + m_, 0.0);
        for (int j = 0; j < n_; ++j)
            cost[j] = c[j];
        optimize(cost, n_);
        Solution s;
        s.objective = objective(cost);
        s.x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_)
                s.x[basis_[i]] = rhs(i);
        return s;
    }

private:
    double& cell(int i, int j) { return t_[static_cast<std::size_t>(i) * width_ + j]; }
    double& rhs(int i) { return cell(i, width_ - 1); }

    double objective(const std::vector<double>& cost)
    {
        double v = 0.0;
        for (int i = 0; i < m_; ++i)
            v += cost[basis_[i]] * rhs(i);
        return v;
    }

    void pivot(int row, int col)
    {
        const double inv = 1.0 / cell(row, col);
        for (int j = 0; j < width_; ++j)
            cell(row, j) *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == row)
                continue;
            const double f = cell(i, col);
            if (f == 0.0)
                continue;
            for (int j = 0; j < width_; ++j)
                cell(i, j) -= f * cell(row, j);
            cell(i, col) = 0.0;
        }
        basis_[row] = col;
    }

    // Columns >= `enter_limit` never enter the basis. Dantzig's rule, with
    // Bland's rule after many iterations to rule out cycling.
    void optimize(const std::vector<double>& cost, int enter_limit)
    {
        const int bland_after = 50 * (m_ + n_);
        std::vector<double> reduced(enter_limit);
        for (int iter = 0;; ++iter) {
            if (iter > 200 * (m_ + n_) + 1000)
                throw std::runtime_error("simplex: iteration limit");
            for (int j = 0; j < enter_limit; ++j) {
                double r = cost[j];
                for (int i = 0; i < m_; ++i)
                    r -= cost[basis_[i]] * cell(i, j);
                reduced[j] = r;
            }
            int enter = -1;
            for (int j = 0; j < enter_limit; ++j) {
                if (reduced[j] >= -kEps)
                    continue;
                if (enter < 0 || (iter < bland_after && reduced[j] < reduced[enter]))
                    enter = j;
                if (iter >= bland_after)
                    break;
            }
            if (enter < 0)
                return;
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m_; ++i) {
                const double a = cell(i, enter);
                if (a <= kEps)
                    continue;
                const double ratio = rhs(i) / a;
                if (leave < 0 || ratio < best - kEps || (ratio <= best + kEps && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                throw std::runtime_error("simplex: unbounded objective");
            pivot(leave, enter);
        }
    }

    int m_;
    int n_;
    int width_;
    std::vector<double> t_;
    std::vector<int> basis_;
};

} // namespace

std::optional<Solution> solve(const Problem& p)
{
    if (p.a.size() != static_cast<std::size_t>(p.rows) * p.cols || p.b.size() != static_cast<std::size_t>(p.rows) ||
        p.c.size() != static_cast<std::size_t>(p.cols))
        throw std::invalid_argument("lp::solve: inconsistent problem dimensions");
    Tableau t(p);
    if (!t.feasible())
        return std::nullopt;
    return t.minimize(p.c);
}

} // namespace checkmine::lp
