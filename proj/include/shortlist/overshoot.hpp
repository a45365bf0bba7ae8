#pragma once
// Local and global overshooting analysis.
//
// Locally: fix two neighboring applications a < b and optimize a single
// school x between them.  Stationarity 2x - z + gamma (2x - 3x^2) = 0 with
// z = a + b has the interior root
//
//     x* = z / ((1 + gamma) + sqrt((1 + gamma)^2 - 3 gamma z)),
//
// the algebraically stable form of the quadratic's minus branch (it tends
// to z/2 as gamma -> 0 without cancellation).  The biased student places
// the school above the midpoint exactly when z > 4/3 -- they overshoot
// toward the more selective neighbor in the top region and undershoot in
// the bottom region.  Globally the same force pushes a whole optimal
// portfolio outward: for k = 5 and small gamma, x_1 > 5/6 and x_5 < 1/6.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "shortlist/bounds.hpp"
#include "shortlist/model.hpp"
#include "shortlist/solver.hpp"

namespace shortlist {

struct LocalOvershootResult {
    double x_star = 0.0;
    double midpoint = 0.0;
    bool overshoots = false;  // a + b > 4/3
};

// The analysis is proved for gamma < 2 - sqrt(3); it extends to gamma < 1/2
// via the x_2 cap (z <= 1 + h(gamma) < 2 - gamma keeps the discriminant
// positive), but that wider range is opt-in, not the default.
inline double overshoot_gamma_limit(bool extended_range = false) {
    return extended_range ? 0.5 : 2.0 - std::sqrt(3.0);
}

namespace detail {

inline void check_overshoot_gamma(double gamma, bool extended_range, const char* who) {
    if (!(gamma > 0.0 && gamma < overshoot_gamma_limit(extended_range)))
        throw std::invalid_argument(std::string(who) + ": gamma must lie in (0, " +
                                    (extended_range ? "1/2)" : "2 - sqrt(3))"));
}

}  // namespace detail

inline LocalOvershootResult interior_optimum(double a, double b, double gamma,
                                             bool extended_range = false) {
    detail::check_overshoot_gamma(gamma, extended_range, "interior_optimum");
    if (!(a >= 0.0 && a < b && b <= 1.0))
        throw std::invalid_argument("interior_optimum: need 0 <= a < b <= 1");
    const double z = a + b;
    const double og = 1.0 + gamma;
    const double disc = og * og - 3.0 * gamma * z;
    if (disc < 0.0) throw std::invalid_argument("interior_optimum: negative discriminant");
    const double x = z / (og + std::sqrt(disc));
    if (!(x > a && x < b))
        throw std::invalid_argument(
            "interior_optimum: stationary point not interior to (a, b) -- the optimum sits at "
            "an endpoint for these neighbors");
    return {x, 0.5 * z, z > 4.0 / 3.0};
}

// Threshold z(theta) such that z > z(theta) forces x* > theta z:
//   z(theta) = (6 theta (1 + gamma) - 3) / (9 theta^2 gamma),
// evaluated as (6 theta - 3)/(9 theta^2 gamma) + 2/(3 theta) so the
// gamma-dependent part cancels exactly at theta = 1/2 (z(1/2) = 4/3 in
// floating point, not merely near it).  theta must lie in the feasible band
// (1/(2(1+gamma)), (1 + gamma - sqrt((1+gamma)^2 - 6 gamma))/(6 gamma)),
// whose edges correspond to z = 0 and z = 2.
inline double theta_threshold(double theta, double gamma) {
    detail::check_overshoot_gamma(gamma, false, "theta_threshold");
    const double og = 1.0 + gamma;
    const double lo = 1.0 / (2.0 * og);
    const double band_disc = og * og - 6.0 * gamma;  // > 0 throughout (0, 2 - sqrt(3))
    const double hi = (og - std::sqrt(band_disc)) / (6.0 * gamma);
    if (!(theta > lo && theta < hi))
        throw std::invalid_argument("theta_threshold: theta outside the feasible band (" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + ")");
    return (6.0 * theta - 3.0) / (9.0 * theta * theta * gamma) + 2.0 / (3.0 * theta);
}

// One row of the global scan: solved extremes against the unbiased grid.
struct OvershootScanRow {
    double gamma = 0.0;
    double x1 = 0.0;
    double xk = 0.0;
    double x1_minus_unbiased = 0.0;  // x_1 - k/(k+1)
    double xk_minus_unbiased = 0.0;  // x_k - 1/(k+1)
    bool overshoot_top = false;
    bool undershoot_bottom = false;
};

// Solve the k-portfolio along a gamma grid and report how far the solved
// extremes overshoot/undershoot the unbiased positions.
inline std::vector<OvershootScanRow> global_overshoot_scan(int k,
                                                           const std::vector<double>& gamma_grid,
                                                           const SolveConfig& cfg = {}) {
    if (k < 1) throw std::invalid_argument("global_overshoot_scan: k must be >= 1");
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        if (!(gamma_grid[i] > 0.0))
            throw std::invalid_argument("global_overshoot_scan: gamma grid must be positive");
        if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1]))
            throw std::invalid_argument("global_overshoot_scan: gamma grid must be ascending");
    }
    const double top = static_cast<double>(k) / (k + 1);
    const double bottom = 1.0 / (k + 1);
    std::vector<OvershootScanRow> rows;
    rows.reserve(gamma_grid.size());
    for (double g : gamma_grid) {
        const SolveReport rep = solve(k, BiasParams::from_gamma(g), cfg);
        OvershootScanRow row;
        row.gamma = g;
        row.x1 = rep.portfolio[0];
        row.xk = rep.portfolio[rep.portfolio.size() - 1];
        row.x1_minus_unbiased = row.x1 - top;
        row.xk_minus_unbiased = row.xk - bottom;
        row.overshoot_top = row.x1 > top;
        row.undershoot_bottom = row.xk < bottom;
        rows.push_back(row);
    }
    return rows;
}

// x_i(gamma) along a grid decreasing toward 0, for convergence plots.  The
// limit is the unbiased (k+1-i)/(k+1), but the approach need not be
// monotone; no assertion is made here.
inline std::vector<double> convergence_trace(int k, int i, const std::vector<double>& gamma_grid,
                                             const SolveConfig& cfg = {}) {
    if (k < 1 || i < 1 || i > k)
        throw std::invalid_argument("convergence_trace: index out of range");
    for (std::size_t j = 0; j < gamma_grid.size(); ++j) {
        if (!(gamma_grid[j] > 0.0))
            throw std::invalid_argument("convergence_trace: gamma grid must be positive");
        if (j > 0 && !(gamma_grid[j] < gamma_grid[j - 1]))
            throw std::invalid_argument(
                "convergence_trace: gamma grid must be strictly decreasing");
    }
    std::vector<double> xs;
    xs.reserve(gamma_grid.size());
    for (double g : gamma_grid)
        xs.push_back(solve(k, BiasParams::from_gamma(g), cfg).portfolio[static_cast<std::size_t>(i - 1)]);
    return xs;
}

}  // namespace shortlist
