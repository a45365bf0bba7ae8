#pragma once
// Closed-form bounds on optimal biased portfolios, and the machinery to
// check solved portfolios against them.
//
// Everything here rests on the gap law Delta_{i+1} = Delta_i + gamma f(x_i)
// with f(x) = 3 x^2 - 2 x (the negated bias gradient), whose range on [0,1]
// is [-1/3, 1]: summing the law twice expresses each x_i as the unbiased
// position (k+1-i)/(k+1) plus a gamma-weighted combination of f values,
// which per-index envelopes on f turn into computable sandwiches.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shortlist {

// Universal cap on the second school: x_2 <= h(gamma), any portfolio size.
inline double h_of_gamma(double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("h_of_gamma: gamma must be > 0 (no sub-1 cap otherwise)");
    if (gamma < 0.5) return 1.0 - gamma;
    if (gamma < 2.0) return (1.0 - gamma + gamma * gamma) / (3.0 * gamma);
    const double disc = (1.0 - 2.0 * gamma) * (1.0 - 2.0 * gamma) - 4.0 * gamma;
    if (disc < 0.0)
        throw std::invalid_argument("h_of_gamma: negative discriminant (formula misuse)");
    return (1.0 + 2.0 * gamma + std::sqrt(disc)) / (6.0 * gamma);
}

// At most this many schools sit above 2/3: 1 for gamma > 1/3, else
// 1 + 1/(3 gamma).  At the branch point both are valid caps; the larger
// (conservative) one is returned.
inline double above_two_thirds_cap(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("above_two_thirds_cap: gamma must be > 0");
    return gamma > 1.0 / 3.0 ? 1.0 : 1.0 + 1.0 / (3.0 * gamma);
}

// At most m(gamma, c) schools sit above c, for any c in (0, 2/3).  The
// 1/(3 gamma) term accounts for the sub-1/3-bias regime; at gamma = 1/3
// exactly the conservative (larger) branch is used, mirroring
// above_two_thirds_cap.
inline double m_of_gamma_c(double gamma, double c) {
    if (!(gamma > 0.0)) throw std::invalid_argument("m_of_gamma_c: gamma must be > 0");
    if (!(c > 0.0 && c < 2.0 / 3.0))
        throw std::invalid_argument("m_of_gamma_c: c must lie in (0, 2/3)");
    double m = 2.0 + (2.0 / 3.0 - c) / std::sqrt(gamma * c * c * (1.0 - c));
    if (gamma <= 1.0 / 3.0) m += 1.0 / (3.0 * gamma);
    return m;
}

struct PGamma {
    double p = 0.0;      // payoff ceiling, strictly below 1/2
    double c_star = 0.0; // minimizing split point
};

namespace detail {

inline double payoff_ceiling_at(double gamma, double c) {
    const double m = m_of_gamma_c(gamma, c);
    return 0.5 - (1.0 - c) * (1.0 - c) / (2.0 * (m + 1.0));
}

}  // namespace detail

// The biased student's true payoff never exceeds p(gamma) < 1/2, for any
// portfolio size.  The ceiling holds for every split point c in (0, 2/3);
// the reported value minimizes over c by dense grid (step 1e-4) plus
// golden-section refinement, so it is the tightest constant this family of
// bounds yields.
inline PGamma p_of_gamma(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("p_of_gamma: gamma must be > 0");
    const double step = 1e-4;
    double best_c = step;
    double best_p = detail::payoff_ceiling_at(gamma, best_c);
    for (double c = 2.0 * step; c < 2.0 / 3.0 - 0.5 * step; c += step) {
        const double p = detail::payoff_ceiling_at(gamma, c);
        if (p < best_p) {
            best_p = p;
            best_c = c;
        }
    }
    // golden-section refinement around the grid minimum
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::max(best_c - step, 0.25 * step);
    double hi = std::min(best_c + step, 2.0 / 3.0 - 0.25 * step);
    double c1 = hi - inv_phi * (hi - lo), c2 = lo + inv_phi * (hi - lo);
    double p1 = detail::payoff_ceiling_at(gamma, c1), p2 = detail::payoff_ceiling_at(gamma, c2);
    while (hi - lo > 1e-12) {
        if (p1 <= p2) {
            hi = c2;
            c2 = c1;
            p2 = p1;
            c1 = hi - inv_phi * (hi - lo);
            p1 = detail::payoff_ceiling_at(gamma, c1);
        } else {
            lo = c1;
            c1 = c2;
            p1 = p2;
            c2 = lo + inv_phi * (hi - lo);
            p2 = detail::payoff_ceiling_at(gamma, c2);
        }
    }
    const double c = 0.5 * (lo + hi);
    return {detail::payoff_ceiling_at(gamma, c), c};
}

// Portfolio-size threshold k(gamma) = 2p/(1-2p): a rational student with
// more than this many applications out-earns every biased portfolio.
inline double k_of_gamma(double gamma) {
    const double p = p_of_gamma(gamma).p;
    return 2.0 * p / (1.0 - 2.0 * p);
}

// Per-index envelope on f(x_i) = 3 x_i^2 - 2 x_i.
struct DeltaEnvelope {
    std::vector<double> lower;
    std::vector<double> upper;

    static DeltaEnvelope universal(int k) {
        if (k < 1) throw std::invalid_argument("DeltaEnvelope: k must be >= 1");
        DeltaEnvelope e;
        e.lower.assign(static_cast<std::size_t>(k), -1.0 / 3.0);  // f(1/3), the minimum
        e.upper.assign(static_cast<std::size_t>(k), 1.0);         // f(1), the maximum
        return e;
    }
};

namespace detail {

inline void check_envelope(const DeltaEnvelope& env, int k) {
    if (env.lower.size() != static_cast<std::size_t>(k) ||
        env.upper.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("DeltaEnvelope: size mismatch with k");
    for (int i = 0; i < k; ++i)
        if (!(env.lower[static_cast<std::size_t>(i)] <= env.upper[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("DeltaEnvelope: lower > upper at index " +
                                        std::to_string(i + 1));
}

}  // namespace detail

// General sandwich: for every stationary portfolio,
//   x_i <= (k+1-i)/(k+1) + gamma (k+1-i)/(k+1) sum_{j<i} j ub_j
//                        + gamma i/(k+1) sum_{j=1}^{k+1-i} j ub_{k+1-j},
// and symmetrically with the lower envelope.
inline std::pair<std::vector<double>, std::vector<double>> xi_sandwich_general(
    int k, double gamma, const DeltaEnvelope& env) {
    if (k < 1) throw std::invalid_argument("xi_sandwich_general: k must be >= 1");
    if (!(gamma >= 0.0)) throw std::invalid_argument("xi_sandwich_general: gamma must be >= 0");
    detail::check_envelope(env, k);
    std::vector<double> lower(static_cast<std::size_t>(k)), upper(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        const double base = static_cast<double>(k + 1 - i) / (k + 1);
        double head_lo = 0.0, head_up = 0.0;
        for (int j = 1; j <= i - 1; ++j) {
            head_lo += j * env.lower[static_cast<std::size_t>(j - 1)];
            head_up += j * env.upper[static_cast<std::size_t>(j - 1)];
        }
        double tail_lo = 0.0, tail_up = 0.0;
        for (int j = 1; j <= k + 1 - i; ++j) {
            tail_lo += j * env.lower[static_cast<std::size_t>(k - j)];
            tail_up += j * env.upper[static_cast<std::size_t>(k - j)];
        }
        lower[static_cast<std::size_t>(i - 1)] =
            base + gamma * base * head_lo + gamma * i / (k + 1) * tail_lo;
        upper[static_cast<std::size_t>(i - 1)] =
            base + gamma * base * head_up + gamma * i / (k + 1) * tail_up;
    }
    return {std::move(lower), std::move(upper)};
}

// Universal-envelope sandwich in closed form:
//   (k+1-i)/(k+1) - gamma/3 * i(k+1-i)/2  <=  x_i  <=  (k+1-i)/(k+1) + gamma * i(k+1-i)/2.
inline std::pair<std::vector<double>, std::vector<double>> xi_sandwich(int k, double gamma) {
    if (k < 1) throw std::invalid_argument("xi_sandwich: k must be >= 1");
    if (!(gamma >= 0.0)) throw std::invalid_argument("xi_sandwich: gamma must be >= 0");
    std::vector<double> lower(static_cast<std::size_t>(k)), upper(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        const double base = static_cast<double>(k + 1 - i) / (k + 1);
        const double w = static_cast<double>(i) * (k + 1 - i) / 2.0;
        lower[static_cast<std::size_t>(i - 1)] = base - gamma / 3.0 * w;
        upper[static_cast<std::size_t>(i - 1)] = base + gamma * w;
    }
    return {std::move(lower), std::move(upper)};
}

// Neighbor-relative sandwich: given x_{i-1},
//   x_i >= (k+1-i)/(k+2-i) x_{i-1} + gamma/(k+2-i) sum_{j=1}^{k+1-i} j lb_{k+1-j},
// and symmetrically with the upper envelope.  Forward-substituting from
// x_0 = 1 cross-validates the global sandwich.
inline std::pair<double, double> xi_neighbor_bound(int k, int i, double x_prev, double gamma,
                                                   const DeltaEnvelope& env) {
    if (k < 1 || i < 1 || i > k)
        throw std::invalid_argument("xi_neighbor_bound: index out of range");
    if (!(gamma >= 0.0)) throw std::invalid_argument("xi_neighbor_bound: gamma must be >= 0");
    detail::check_envelope(env, k);
    const double coef = static_cast<double>(k + 1 - i) / (k + 2 - i);
    double s_lo = 0.0, s_up = 0.0;
    for (int j = 1; j <= k + 1 - i; ++j) {
        s_lo += j * env.lower[static_cast<std::size_t>(k - j)];
        s_up += j * env.upper[static_cast<std::size_t>(k - j)];
    }
    const double scale = gamma / (k + 2 - i);
    return {coef * x_prev + scale * s_lo, coef * x_prev + scale * s_up};
}

// Refined envelope behind the k = 5 global-overshoot thresholds.  The
// universal sandwich localizes each x_j to [base - gamma w/3, base + gamma w]
// with base = (k+1-j)/(k+1) and w = j(k+1-j)/2; f is then bounded over that
// interval.  Requires k+1 divisible by 3 (so interval endpoints stay on one
// side of the vertex x = 1/3, except the single straddling index) and
// gamma <= 8/(k+1)^3 (so the intervals stay inside [0, 1] and short).
// At the straddling index the minimum is the vertex value f(1/3) = -1/3;
// the maximum is taken at the left endpoint, the convention that yields the
// known k = 5 threshold polynomials.
inline DeltaEnvelope refined_envelope(int k, double gamma) {
    if (k < 2 || (k + 1) % 3 != 0)
        throw std::invalid_argument("refined_envelope: k + 1 must be divisible by 3");
    const double gmax = 8.0 / (static_cast<double>(k + 1) * (k + 1) * (k + 1));
    if (!(gamma > 0.0 && gamma <= gmax))
        throw std::invalid_argument("refined_envelope: gamma must lie in (0, 8/(k+1)^3]");
    auto f = [](double x) { return 3.0 * x * x - 2.0 * x; };
    DeltaEnvelope env;
    env.lower.resize(static_cast<std::size_t>(k));
    env.upper.resize(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) {
        const double base = static_cast<double>(k + 1 - j) / (k + 1);
        const double w = static_cast<double>(j) * (k + 1 - j) / 2.0;
        const double a = base - gamma * w / 3.0;
        const double b = base + gamma * w;
        const int side = 3 * (k + 1 - j) - (k + 1);  // sign of base - 1/3, exactly
        double lo, up;
        if (side < 0) {  // interval left of the vertex: f decreasing
            up = f(a);
            lo = f(b);
        } else if (side > 0) {  // right of the vertex: f increasing
            up = f(b);
            lo = f(a);
        } else {  // straddling interval
            up = f(a);
            lo = -1.0 / 3.0;
        }
        env.lower[static_cast<std::size_t>(j - 1)] = lo;
        env.upper[static_cast<std::size_t>(j - 1)] = up;
    }
    return env;
}

// Bundle of every scalar bound at one (gamma, k, c), plus the closed-form
// sandwich, for reporting.
struct BoundsReport {
    double h_gamma = 0.0;
    double above_two_thirds_cap = 0.0;
    double m_gamma_c = 0.0;
    double p_gamma = 0.0;
    double k_gamma = 0.0;
    std::vector<double> xi_lower;
    std::vector<double> xi_upper;
};

inline BoundsReport bounds_report(double gamma, int k, double c) {
    BoundsReport r;
    r.h_gamma = h_of_gamma(gamma);
    r.above_two_thirds_cap = above_two_thirds_cap(gamma);
    r.m_gamma_c = m_of_gamma_c(gamma, c);
    const PGamma pg = p_of_gamma(gamma);
    r.p_gamma = pg.p;
    r.k_gamma = 2.0 * pg.p / (1.0 - 2.0 * pg.p);
    auto sandwich = xi_sandwich(k, gamma);
    r.xi_lower = std::move(sandwich.first);
    r.xi_upper = std::move(sandwich.second);
    return r;
}

}  // namespace shortlist
