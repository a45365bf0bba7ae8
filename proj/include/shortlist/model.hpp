#pragma once
// Core types for the continuum application-portfolio model.
//
// A student with a uniform[0,1] score s applies to k schools identified by
// their admission thresholds 1 >= x_1 > ... > x_k >= 0; school x admits the
// student iff s >= x, so one score realization admits the student to every
// school below it (perfectly correlated, common-score admissions).  The
// student attends the most selective admitting school, whose value equals
// its threshold, giving expected consumption  sum_i x_i (x_{i-1} - x_i)
// with the sentinel x_0 = 1.
//
// Preferences carry a gain-loss term over the admission news of each
// application: relative to the expected outcome of a single application
// (p, v), an admission is a gain of (1-p) tau v and a rejection a loss of
// -lambda p tau v.  In expectation the news nets out to -gamma (1-x) x^2
// per school with gamma = (lambda - 1) tau, so every formula downstream
// depends on (tau, lambda) only through gamma.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shortlist {

// Gain-loss parameters.  tau scales the news utility, lambda >= 1 is the
// loss-aversion coefficient; gamma = (lambda - 1) * tau is the only
// combination the expected-utility formulas see.
struct BiasParams {
    double tau = 0.0;
    double lambda = 1.0;
    double gamma = 0.0;

    static BiasParams from_tau_lambda(double tau, double lambda) {
        if (!std::isfinite(tau) || tau < 0.0)
            throw std::invalid_argument("BiasParams: tau must be finite and >= 0");
        if (!std::isfinite(lambda) || lambda < 1.0)
            throw std::invalid_argument("BiasParams: lambda must be finite and >= 1");
        BiasParams b;
        b.tau = tau;
        b.lambda = lambda;
        b.gamma = (lambda - 1.0) * tau;
        return b;
    }

    // Canonical representative (tau = gamma, lambda = 2) of the class of
    // (tau, lambda) pairs that collapse to the same gamma.
    static BiasParams from_gamma(double gamma) {
        if (!std::isfinite(gamma) || gamma < 0.0)
            throw std::invalid_argument("BiasParams: gamma must be finite and >= 0");
        BiasParams b;
        b.tau = gamma;
        b.lambda = 2.0;
        b.gamma = gamma;
        return b;
    }
};

// A finite school offer: acceptance probability p and consumption value v.
struct SchoolSpec {
    double p = 0.0;
    double v = 0.0;
};

// Strictly decreasing admission thresholds 1 >= x_1 > ... > x_k >= 0.
// Closed endpoints are allowed (limiting portfolios touch them); strictness
// between neighbors is enforced with an absolute slack of 1e-12 so that
// converged solver output with ulp-level ties is not rejected.
class Portfolio {
  public:
    static constexpr double kMonotoneSlack = 1e-12;

    explicit Portfolio(std::vector<double> schools) : x_(std::move(schools)) {
        if (x_.empty())
            throw std::invalid_argument("Portfolio: needs at least one school");
        for (std::size_t i = 0; i < x_.size(); ++i)
            if (!std::isfinite(x_[i]))
                throw std::invalid_argument("Portfolio: school " + std::to_string(i + 1) +
                                            " is not finite");
        if (x_.front() > 1.0 || x_.back() < 0.0)
            throw std::invalid_argument("Portfolio: schools must lie in [0, 1]");
        for (std::size_t i = 0; i + 1 < x_.size(); ++i)
            if (!(x_[i] - x_[i + 1] > -kMonotoneSlack))
                throw std::invalid_argument(
                    "Portfolio: schools must be strictly decreasing (violated between index " +
                    std::to_string(i + 1) + " and " + std::to_string(i + 2) + ")");
    }

    std::size_t size() const { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }  // 0-based
    const std::vector<double>& schools() const { return x_; }

  private:
    std::vector<double> x_;
};

// Gaps Delta_i = x_{i-1} - x_i with x_0 = 1; they sum to 1 - x_k.
struct GapProfile {
    std::vector<double> deltas;
};

inline GapProfile gap_profile(const Portfolio& p) {
    GapProfile g;
    g.deltas.reserve(p.size());
    double prev = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        g.deltas.push_back(prev - p[i]);
        prev = p[i];
    }
    return g;
}

// U_gamma(x) = -gamma (1-x) x^2 + x (1-x) = x (1-x) (1 - gamma x): a cubic
// with roots {0, 1}, plus an interior sign change at 1/gamma when gamma > 1.
inline double single_school_utility(double x, const BiasParams& bias) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("single_school_utility: x must lie in [0, 1]");
    return x * (1.0 - x) * (1.0 - bias.gamma * x);
}

// U_gamma(x_1..x_k) = sum_i [ -gamma (1 - x_i) x_i^2 + x_i (x_{i-1} - x_i) ].
inline double perceived_utility(const Portfolio& p, const BiasParams& bias) {
    double u = 0.0;
    double prev = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p[i];
        u += -bias.gamma * (1.0 - x) * x * x + x * (prev - x);
        prev = x;
    }
    return u;
}

// Expected admissions outcome sum_i x_i (x_{i-1} - x_i): consumption only,
// no behavioral terms.  Bounded by k/(2(k+1)), attained at equal spacing.
inline double true_payoff(const Portfolio& p) {
    double u = 0.0;
    double prev = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p[i];
        u += x * (prev - x);
        prev = x;
    }
    return u;
}

// Perceived utility of an explicit (p, v) school list, ordered by decreasing
// value:  -sum_i gamma p_i (1-p_i) v_i + sum_i v_i P(attend i).
//
// Attendance probabilities are only well defined once the correlation
// between admission lotteries is fixed.  This evaluator supports the
// common-score threshold family v = 1 - p (school (p, v) is the continuum
// school at x = v), where P(attend i) = x_{i-1} - x_i; anything else is
// rejected rather than silently assuming independence.
inline double perceived_utility_finite(const std::vector<SchoolSpec>& schools,
                                       const BiasParams& bias) {
    if (schools.empty())
        throw std::invalid_argument("perceived_utility_finite: needs at least one school");
    constexpr double kThresholdSlack = 1e-12;
    std::vector<double> x;
    x.reserve(schools.size());
    for (std::size_t i = 0; i < schools.size(); ++i) {
        const SchoolSpec& s = schools[i];
        if (!std::isfinite(s.p) || s.p < 0.0 || s.p > 1.0)
            throw std::invalid_argument("perceived_utility_finite: acceptance probability " +
                                        std::to_string(i + 1) + " outside [0, 1]");
        if (!std::isfinite(s.v) || s.v < 0.0)
            throw std::invalid_argument("perceived_utility_finite: value " +
                                        std::to_string(i + 1) + " must be >= 0");
        if (i > 0 && !(schools[i - 1].v > s.v))
            throw std::invalid_argument(
                "perceived_utility_finite: schools must be sorted strictly decreasing by v");
        if (std::abs(s.v - (1.0 - s.p)) > kThresholdSlack)
            throw std::invalid_argument(
                "perceived_utility_finite: school " + std::to_string(i + 1) +
                " has v != 1 - p; only threshold-correlated admissions are supported");
        x.push_back(s.v);
    }
    return perceived_utility(Portfolio(std::move(x)), bias);
}

}  // namespace shortlist
