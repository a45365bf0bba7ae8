#pragma once
// Solves the k-school first-order system for a gamma-biased student.
//
// Stationarity of U_gamma in each x_i gives the three-term recurrence
//
//     x_{i+1} = 2 x_i - x_{i-1} + gamma (2 x_i - 3 x_i^2),   x_0 = 1,
//
// with the last school's condition encoded as a virtual x_{k+1} = 0.
// Treating x_1 as the free parameter turns the system into a shooting
// problem, but the recurrence is exponentially unstable: linearized around
// the tail it amplifies errors by t_+^i with t_+ = 1 + gamma + sqrt(gamma
// (2 + gamma)), so a bisected x_1 alone cannot pin the tail down for large
// k.  Every shot is therefore sanitized (unstable tail replaced by the
// asymptotic geometric decay) and re-polished with a damped tridiagonal
// Newton pass on the full system before it is accepted.
//
// The system can admit several stationary points with different portfolio
// sizes' character (for instance gamma = 0.1, k = 13 has a "frozen" branch
// and a deeper-reaching branch with lower perceived utility), so candidates
// are collected from three independent strategies -- multistart shooting,
// continuation in k, and continuation in gamma -- and the perceived-utility
// maximizer is returned.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shortlist/model.hpp"

namespace shortlist {

struct SolveConfig {
    double boundary_tolerance = 1e-12;  // bisection tolerance on the virtual x_{k+1}
    int max_bisection_iters = 200;
    int multistart_count = 256;  // x_1 seeds scanned for sign brackets
    bool clamp_negative = true;  // repair shots whose iterates go negative mid-run
};

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One step of the stationarity recurrence.
inline double foc_next(double x_prev, double x_cur, const BiasParams& bias) {
    return 2.0 * x_cur - x_prev + bias.gamma * (2.0 * x_cur - 3.0 * x_cur * x_cur);
}

struct SolveReport {
    Portfolio portfolio;
    double perceived = 0.0;
    double payoff = 0.0;
    std::vector<double> residuals;  // signed FOC residual per index (x_0 = 1, x_{k+1} = 0)
    double boundary_error = 0.0;    // |virtual x_{k+1}| implied by the last two schools
    GapProfile gaps;
};

namespace detail {

inline double foc_step(double xp, double xc, double g) {
    return 2.0 * xc - xp + g * (2.0 * xc - 3.0 * xc * xc);
}

// Residuals F_i = x_{i-1} - 2 x_i + x_{i+1} - gamma (2 x_i - 3 x_i^2).
inline std::vector<double> foc_residuals(const std::vector<double>& x, double g) {
    const std::size_t k = x.size();
    std::vector<double> r(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double xp = (i == 0) ? 1.0 : x[i - 1];
        const double xn = (i + 1 == k) ? 0.0 : x[i + 1];
        r[i] = xp - 2.0 * x[i] + xn - g * (2.0 * x[i] - 3.0 * x[i] * x[i]);
    }
    return r;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

constexpr double kDiverged = 1e18;

// Shoot from (x_0 = 1, x_1) and return the virtual x_{k+1}.  Interior
// iterates of any admissible solution are strictly decreasing and positive;
// as soon as an iterate breaks that the shot has committed to blowing up
// (monotonically, by the recurrence's convexity), so it is classified as
// diverged with the sign the blow-up preserves.  This keeps the boundary
// function sign-consistent for bracketing while exiting early.
inline double shoot_boundary(double x1, int k, double g) {
    double xp = 1.0;
    double xc = x1;
    for (int i = 1; i <= k; ++i) {
        const double xn = foc_step(xp, xc, g);
        if (i < k) {
            if (!std::isfinite(xn) || xn >= xc) return kDiverged;
            if (xn <= 0.0) return -kDiverged;
        }
        xp = xc;
        xc = xn;
    }
    return xc;
}

// Raw shot sequence x_1..x_k (tail entries may be garbage; see sanitize_tail).
inline std::vector<double> shoot_sequence(double x1, int k, double g) {
    std::vector<double> x(static_cast<std::size_t>(k));
    x[0] = x1;
    double xp = 1.0;
    for (int i = 1; i < k; ++i) {
        const double xn = foc_step(xp, x[i - 1], g);
        xp = x[i - 1];
        x[i] = xn;
    }
    return x;
}

// Modulus of the contracting root of the recurrence linearized at x = 0:
// t^2 - 2 (1 + gamma) t + 1 = 0  =>  t_- = 1 / (1 + gamma + sqrt(gamma (2 + gamma))).
inline double decay_rate(double g) {
    return 1.0 / (1.0 + g + std::sqrt(g * (2.0 + g)));
}

// Shooting output is reliable at the head and garbage at the tail.  Drop the
// last few entries (and anything from the first non-finite / non-positive /
// non-decreasing entry on), then extend with the asymptotic geometric decay
// x_{i+1} ~ t_- x_i; Newton re-polishes the whole vector afterwards.  With
// clamp_negative disabled, shots needing more repair than the routine tail
// drop are rejected instead.
inline std::optional<std::vector<double>> sanitize_tail(std::vector<double> x, double g,
                                                        bool clamp_negative) {
    const std::size_t k = x.size();
    const std::size_t keep_default = k > 3 ? k - 3 : 1;
    std::size_t keep = keep_default;
    double prev = 1.0;
    for (std::size_t i = 0; i < keep_default; ++i) {
        if (!std::isfinite(x[i]) || x[i] <= 0.0 || x[i] >= prev) {
            keep = i;
            break;
        }
        prev = x[i];
    }
    if (keep == 0) return std::nullopt;
    if (keep < keep_default && !clamp_negative) return std::nullopt;
    const double t = decay_rate(g);
    for (std::size_t i = keep; i < k; ++i) x[i] = x[i - 1] * t;
    return x;
}

// Damped Newton on the full stationarity system.  The Jacobian is
// tridiagonal with unit off-diagonals and diagonal -2 - gamma (2 - 6 x_i);
// it is solved with the Thomas algorithm (diagonally dominant for the x
// ranges that survive validation).  Backtracking halves the step until the
// max-norm residual decreases.
inline bool newton_polish(std::vector<double>& x, double g, double tol = 1e-14,
                          int max_iters = 200) {
    const std::size_t k = x.size();
    std::vector<double> r = foc_residuals(x, g);
    std::vector<double> cp(k), dp(k), d(k), xt(k);
    double err = max_abs(r);
    if (!std::isfinite(err)) return false;
    for (int it = 0; it < max_iters; ++it) {
        if (err < tol) return true;
        // Thomas forward sweep for J d = -r.
        double diag = -2.0 - g * (2.0 - 6.0 * x[0]);
        if (std::abs(diag) < 1e-300) return false;
        cp[0] = 1.0 / diag;
        dp[0] = -r[0] / diag;
        for (std::size_t i = 1; i < k; ++i) {
            diag = -2.0 - g * (2.0 - 6.0 * x[i]) - cp[i - 1];
            if (std::abs(diag) < 1e-300) return false;
            cp[i] = 1.0 / diag;
            dp[i] = (-r[i] - dp[i - 1]) / diag;
        }
        d[k - 1] = dp[k - 1];
        for (std::size_t i = k - 1; i-- > 0;) d[i] = dp[i] - cp[i] * d[i + 1];

        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < k; ++i) xt[i] = x[i] + alpha * d[i];
            std::vector<double> rt = foc_residuals(xt, g);
            const double errt = max_abs(rt);
            if (std::isfinite(errt) && errt < err * (1.0 - 1e-4 * alpha)) {
                x.swap(xt);
                r = std::move(rt);
                err = errt;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) return err < tol;
    }
    return err < tol;
}

// A candidate is admissible when it is a genuine interior decreasing
// portfolio whose residuals meet the report guarantee (10 x tolerance).
inline bool valid_solution(const std::vector<double>& x, double g, const SolveConfig& cfg) {
    if (x.empty() || !(x.front() < 1.0) || !(x.back() > 0.0)) return false;
    double prev = 1.0;
    for (double v : x) {
        if (!std::isfinite(v) || !(v < prev)) return false;
        prev = v;
    }
    return max_abs(foc_residuals(x, g)) <= 10.0 * cfg.boundary_tolerance;
}

inline void add_candidate(std::vector<std::vector<double>>& out, std::vector<double> seed,
                          double g, const SolveConfig& cfg) {
    if (!newton_polish(seed, g)) return;
    if (valid_solution(seed, g, cfg)) out.push_back(std::move(seed));
}

// Multistart scan over x_1.  The scan covers the whole unit interval: the
// x_2 <= h(gamma) cap does not apply to x_1, and the top school genuinely
// exceeds h(gamma) on frozen branches (gamma = 0.1, k = 13 has x_1 = 0.921
// against h = 0.9), so restricting the grid to (0, h] would miss optima.
inline void shooting_candidates(std::vector<std::vector<double>>& out, int k, double g,
                                const SolveConfig& cfg) {
    const int n = std::max(cfg.multistart_count, 1);
    std::vector<double> grid(static_cast<std::size_t>(n)), fval(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        grid[j] = static_cast<double>(j + 1) / (n + 1);
        fval[j] = shoot_boundary(grid[j], k, g);
    }
    for (int j = 0; j < n; ++j) {
        double root;
        if (fval[j] == 0.0) {
            root = grid[j];
        } else if (j + 1 < n && fval[j] * fval[j + 1] < 0.0) {
            double lo = grid[j], hi = grid[j + 1];
            double flo = fval[j];
            for (int it = 0; it < cfg.max_bisection_iters; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;  // interval at double resolution
                const double fm = shoot_boundary(mid, k, g);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            root = 0.5 * (lo + hi);
        } else {
            continue;
        }
        if (auto seed = sanitize_tail(shoot_sequence(root, k, g), g, cfg.clamp_negative))
            add_candidate(out, std::move(*seed), g, cfg);
    }
}

// Continuation in gamma: deform the exact gamma = 0 equal spacing along a
// gamma path, re-polishing at every step; the step adapts (grows on
// success, halves on failure) and the path gives up once it stalls.
inline void gamma_continuation_candidate(std::vector<std::vector<double>>& out, int k,
                                         double g, const SolveConfig& cfg) {
    std::vector<double> x(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) x[i] = static_cast<double>(k - i) / (k + 1);
    double cur = 0.0;
    double step = std::min(g, 0.1);
    while (cur < g) {
        const double nxt = std::min(g, cur + step);
        std::vector<double> trial = x;
        if (newton_polish(trial, nxt) && valid_solution(trial, nxt, cfg)) {
            x = std::move(trial);
            cur = nxt;
            step = std::min(step * 1.7, 0.25);
        } else {
            step *= 0.5;
            if (step < 1e-7) return;  // stalled; other strategies may still succeed
        }
    }
    out.push_back(std::move(x));
}

// Continuation in k: append one school at the asymptotic decay below the
// previous optimum's tail and re-polish.
inline void k_continuation_candidate(std::vector<std::vector<double>>& out,
                                     const std::vector<double>& prev, double g,
                                     const SolveConfig& cfg) {
    std::vector<double> seed = prev;
    seed.push_back(prev.back() * decay_rate(g));
    add_candidate(out, std::move(seed), g, cfg);
}

inline bool lexicographically_larger(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

inline double perceived_raw(const std::vector<double>& x, double g) {
    double u = 0.0, prev = 1.0;
    for (double v : x) {
        u += -g * (1.0 - v) * v * v + v * (prev - v);
        prev = v;
    }
    return u;
}

}  // namespace detail

inline SolveReport make_report(std::vector<double> x, const BiasParams& bias) {
    const double g = bias.gamma;
    std::vector<double> residuals = detail::foc_residuals(x, g);
    const double xkm1 = x.size() >= 2 ? x[x.size() - 2] : 1.0;
    const double boundary = std::abs(detail::foc_step(xkm1, x.back(), g));
    Portfolio pf(std::move(x));
    SolveReport rep{Portfolio(pf), 0.0, 0.0, std::move(residuals), boundary, gap_profile(pf)};
    rep.perceived = perceived_utility(pf, bias);
    rep.payoff = true_payoff(pf);
    return rep;
}

// Optimal k-school portfolio: collect stationary candidates, return the
// perceived-utility maximizer (ties broken toward the lexicographically
// largest portfolio, for determinism).  solve_sequence returns all sizes
// 1..k_max in one pass so the k-continuation strategy comes for free.
inline std::vector<SolveReport> solve_sequence(int k_max, const BiasParams& bias,
                                               const SolveConfig& cfg = {}) {
    if (k_max < 1) throw std::invalid_argument("solve: k must be >= 1");
    if (!(cfg.boundary_tolerance > 0.0))
        throw std::invalid_argument("solve: boundary_tolerance must be > 0");
    if (cfg.multistart_count < 1)
        throw std::invalid_argument("solve: multistart_count must be >= 1");
    if (cfg.max_bisection_iters < 1)
        throw std::invalid_argument("solve: max_bisection_iters must be >= 1");
    const double g = bias.gamma;

    std::vector<SolveReport> out;
    out.reserve(static_cast<std::size_t>(k_max));
    std::vector<double> prev;
    for (int k = 1; k <= k_max; ++k) {
        std::vector<double> best;
        if (g == 0.0) {
            // Unbiased agents space applications equally: x_i = (k+1-i)/(k+1).
            best.resize(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) best[i] = static_cast<double>(k - i) / (k + 1);
        } else {
            std::vector<std::vector<double>> cands;
            detail::shooting_candidates(cands, k, g, cfg);
            if (!prev.empty()) detail::k_continuation_candidate(cands, prev, g, cfg);
            detail::gamma_continuation_candidate(cands, k, g, cfg);
            if (cands.empty())
                throw solver_error("solve: no stationary portfolio found for k=" +
                                   std::to_string(k) + ", gamma=" + std::to_string(g) +
                                   " (scanned " + std::to_string(cfg.multistart_count) +
                                   " x1 seeds on (0, 1) plus continuation paths)");
            std::size_t pick = 0;
            double pick_u = detail::perceived_raw(cands[0], g);
            for (std::size_t c = 1; c < cands.size(); ++c) {
                const double u = detail::perceived_raw(cands[c], g);
                if (u > pick_u ||
                    (u == pick_u && detail::lexicographically_larger(cands[c], cands[pick]))) {
                    pick = c;
                    pick_u = u;
                }
            }
            best = std::move(cands[pick]);
        }
        prev = best;
        out.push_back(make_report(std::move(best), bias));
    }
    return out;
}

inline SolveReport solve(int k, const BiasParams& bias, const SolveConfig& cfg = {}) {
    return std::move(solve_sequence(k, bias, cfg).back());
}

// Perceived utilities OPT(1..k_max); strict increase is the caller's check.
inline std::vector<double> utility_is_increasing_in_k(int k_max, const BiasParams& bias,
                                                      const SolveConfig& cfg = {}) {
    if (k_max < 2) throw std::invalid_argument("utility_is_increasing_in_k: k_max must be >= 2");
    std::vector<double> u;
    u.reserve(static_cast<std::size_t>(k_max));
    for (const SolveReport& r : solve_sequence(k_max, bias, cfg)) u.push_back(r.perceived);
    return u;
}

// Exhaustive grid oracle: enumerate every strictly decreasing k-tuple on
// {0, res, 2 res, ..., 1} in descending lexicographic order, keeping the
// strictly best perceived utility (so ties resolve to the lexicographically
// largest tuple).  Independent of the shooting machinery by construction.
inline SolveReport oracle_solve(int k, const BiasParams& bias, double resolution) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("oracle_solve: k must be in 1..4");
    if (!(resolution > 0.0) || resolution > 1e-2)
        throw std::invalid_argument("oracle_solve: resolution must be in (0, 1e-2]");
    const int m = static_cast<int>(std::floor(1.0 / resolution + 1e-9));  // grid 0..m
    // nominal tuple count C(m+1, k)
    double log_combos = 0.0;
    for (int j = 0; j < k; ++j)
        log_combos += std::log(static_cast<double>(m + 1 - j)) - std::log(static_cast<double>(j + 1));
    if (log_combos > std::log(1e9))
        throw resource_error("oracle_solve: grid of " + std::to_string(m + 1) + " points needs > 1e9 " +
                             std::to_string(k) + "-tuples");
    const double g = bias.gamma;

    std::vector<int> cur(static_cast<std::size_t>(k)), best(static_cast<std::size_t>(k));
    double best_u = -1e300;
    // Depth-first descent; partial utility accumulates one school at a time.
    auto rec = [&](auto&& self, int level, int j_hi, double prev_x, double acc) -> void {
        const int reserve = k - 1 - level;  // smaller grid values still needed below
        for (int j = j_hi; j >= reserve; --j) {
            const double x = j * resolution;
            const double term = -g * (1.0 - x) * x * x + x * (prev_x - x);
            cur[static_cast<std::size_t>(level)] = j;
            if (level + 1 == k) {
                const double u = acc + term;
                if (u > best_u) {
                    best_u = u;
                    best = cur;
                }
            } else {
                self(self, level + 1, j - 1, x, acc + term);
            }
        }
    };
    rec(rec, 0, m, 1.0, 0.0);

    std::vector<double> x(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = best[static_cast<std::size_t>(i)] * resolution;
    return make_report(std::move(x), bias);  // residuals here are grid-limited, not solver-grade
}

}  // namespace shortlist
