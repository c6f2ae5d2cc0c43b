#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lpg/game.hpp"

namespace lpg {

/// Absolute payoff tolerance under which the two candidate connection times
/// count as tied. Ties break in the company's favor, i.e. toward staying
/// the full visit.
inline constexpr double kTiePayoffTol = 1e-9;

struct BestResponse {
    double t_star = 0.0;   // optimal connection time, min_connect or visit_time
    bool tie = false;      // endpoints payoff-equal within kTiePayoffTol
    double payoff = 0.0;   // user payoff at t_star
};

/// Switching point of a type: below mu the type connects minimally, at or
/// above it the type stays the whole visit. Grows linearly in visit_time
/// with the given slope.
struct Threshold {
    double mu = 0.0;
    double slope = 0.0;  // d(mu)/d(visit_time)
};

/// mu = (privacy_factor * l-hat * T) / ((1 - privacy_factor) * min_connect).
/// privacy_factor = 0 gives mu = 0 (always stays); privacy_factor = 1 gives
/// mu = +infinity (never stays).
inline Threshold threshold(const UserType& type, const GameParams& params) {
    const double pi = type.privacy_factor;
    if (pi <= 0.0) return {0.0, 0.0};
    if (pi >= 1.0) {
        const double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    const double slope =
        pi * params.expected_loc_error / ((1.0 - pi) * params.min_connect);
    return {slope * params.visit_time, slope};
}

/// User best response to expected level s_hat. The payoff is convex in t,
/// so only the endpoints can win; the endpoint payoffs are compared
/// directly rather than via the threshold.
inline BestResponse best_response(const UserType& type, double s_hat,
                                  const GameParams& params) {
    detail::check_level_in_range(s_hat, params, "best_response");
    const double at_min = user_payoff(type, s_hat, params.min_connect, params);
    const double at_max = user_payoff(type, s_hat, params.visit_time, params);
    if (std::fabs(at_min - at_max) <= kTiePayoffTol)
        return {params.visit_time, true, at_max};
    if (at_max > at_min) return {params.visit_time, false, at_max};
    return {params.min_connect, false, at_min};
}

/// Brute-force best response over an evenly spaced grid of connection times.
/// Grid ties break toward the larger time. Used to cross-check
/// best_response; never called by the solver itself.
inline BestResponse best_response_oracle(const UserType& type, double s_hat,
                                         const GameParams& params,
                                         int grid_n = 10001) {
    if (grid_n < 2)
        throw std::invalid_argument("best_response_oracle: grid_n must be >= 2");
    detail::check_level_in_range(s_hat, params, "best_response_oracle");
    const double lo = params.min_connect;
    const double hi = params.visit_time;
    const double step = (hi - lo) / (grid_n - 1);
    double best_t = lo;
    double best_pay = -std::numeric_limits<double>::infinity();
    double pay_lo = 0.0, pay_hi = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double t = (i + 1 == grid_n) ? hi : lo + step * i;
        const double pay = user_payoff(type, s_hat, t, params);
        if (i == 0) pay_lo = pay;
        if (i + 1 == grid_n) pay_hi = pay;
        if (pay >= best_pay) {
            best_pay = pay;
            best_t = t;
        }
    }
    return {best_t, std::fabs(pay_lo - pay_hi) <= kTiePayoffTol, best_pay};
}

struct CandidatePayoff {
    double s_hat = 0.0;
    double payoff = 0.0;
};

struct SolveOptions {
    /// Restrict the company to pure members of service_levels instead of
    /// arbitrary expected levels (candidates become the smallest offered
    /// level at or above each threshold).
    bool integer_levels = false;
};

struct SolveResult {
    double s_hat_star = 0.0;
    CompanyStrategy strategy;              // realizes s_hat_star over service_levels
    std::vector<BestResponse> responses;   // aligned with params.types.entries
    double company_payoff = 0.0;
    std::vector<double> user_payoffs;
    std::vector<CandidatePayoff> candidates;  // inspected levels, ascending
};

namespace detail {

struct Evaluated {
    double payoff = 0.0;
    std::vector<BestResponse> responses;
};

inline Evaluated evaluate_level(double s_hat, const GameParams& params) {
    Evaluated ev;
    ev.responses.reserve(params.types.size());
    std::vector<double> times;
    times.reserve(params.types.size());
    for (const auto& entry : params.types.entries) {
        ev.responses.push_back(best_response(entry.type, s_hat, params));
        times.push_back(ev.responses.back().t_star);
    }
    ev.payoff = company_payoff(s_hat, times, params);
    return ev;
}

inline std::vector<double> sse_candidates(const GameParams& params,
                                          bool integer_levels) {
    std::vector<double> cands{params.min_level()};
    for (const auto& entry : params.types.entries) {
        const double mu = threshold(entry.type, params).mu;
        if (!(mu >= params.min_level() && mu <= params.max_level())) continue;
        if (integer_levels) {
            auto it = std::lower_bound(params.service_levels.begin(),
                                       params.service_levels.end(), mu);
            cands.push_back(static_cast<double>(*it));
        } else {
            cands.push_back(mu);
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

inline SolveResult pick_best(const std::vector<double>& cands,
                             const GameParams& params) {
    SolveResult result;
    result.candidates.reserve(cands.size());
    std::size_t best = 0;
    double best_pay = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const double pay = evaluate_level(cands[i], params).payoff;
        result.candidates.push_back({cands[i], pay});
        // strict >: payoff ties resolve to the cheapest (smallest) level
        if (pay > best_pay) {
            best_pay = pay;
            best = i;
        }
    }
    result.s_hat_star = cands[best];
    auto ev = evaluate_level(cands[best], params);
    result.company_payoff = ev.payoff;
    result.responses = std::move(ev.responses);
    result.user_payoffs.reserve(result.responses.size());
    for (const auto& br : result.responses) result.user_payoffs.push_back(br.payoff);
    result.strategy = realize_mixed(result.s_hat_star, params.service_levels);
    return result;
}

}  // namespace detail

/// Strong Stackelberg equilibrium of the one-company / many-user-types game.
///
/// The company's payoff is piecewise linear in the expected level s_hat with
/// slope -unit_service_cost between type thresholds, so the maximum sits
/// either at the cheapest level or exactly at a threshold inside the offered
/// range; only those candidates are evaluated. Payoff ties pick the smaller
/// s_hat; follower ties pick the full visit (both favor the company).
inline SolveResult solve_sse(const GameParams& params, const SolveOptions& opt = {}) {
    params.validate();
    return detail::pick_best(detail::sse_candidates(params, opt.integer_levels), params);
}

/// Brute-force equilibrium search over a dense grid of expected levels
/// (plus the exact thresholds, so the true optimum is always probed).
/// Cross-check only.
inline SolveResult solve_sse_oracle(const GameParams& params, double grid_step = 1e-3) {
    params.validate();
    if (!(grid_step > 0.0))
        throw std::invalid_argument("solve_sse_oracle: grid_step must be > 0");
    std::vector<double> probes;
    const double lo = params.min_level();
    const double hi = params.max_level();
    for (double s = lo; s < hi; s += grid_step) probes.push_back(s);
    probes.push_back(hi);
    for (const auto& entry : params.types.entries) {
        const double mu = threshold(entry.type, params).mu;
        if (mu >= lo && mu <= hi) probes.push_back(mu);
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    return detail::pick_best(probes, params);
}

}  // namespace lpg
