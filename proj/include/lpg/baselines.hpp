#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpg/solver.hpp"

namespace lpg {

enum class BaselineKind { Max, Min, Weighted, Averaging };

inline const char* to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::Max: return "Max";
        case BaselineKind::Min: return "Min";
        case BaselineKind::Weighted: return "Weighted";
        case BaselineKind::Averaging: return "Averaging";
    }
    return "?";
}

inline std::optional<BaselineKind> baseline_from_string(std::string_view name) {
    if (name == "max" || name == "Max") return BaselineKind::Max;
    if (name == "min" || name == "Min") return BaselineKind::Min;
    if (name == "weighted" || name == "Weighted") return BaselineKind::Weighted;
    if (name == "averaging" || name == "Averaging") return BaselineKind::Averaging;
    return std::nullopt;
}

/// Level assigned to one privacy factor by the Weighted baseline.
struct WeightedLevel {
    double privacy_factor = 0.0;
    int level = 0;
};

/// A non-equilibrium company policy to compare the equilibrium against.
///   Max        always offer the highest level
///   Min        always offer the lowest level
///   Weighted   floor of the prior-weighted per-type level assignment
///   Averaging  equilibrium of the collapsed single-type game at the
///              prior-mean privacy factor
struct BaselineSpec {
    BaselineKind kind = BaselineKind::Max;
    std::vector<WeightedLevel> weighted_map;  // used by Weighted only

    static BaselineSpec max() { return {BaselineKind::Max, {}}; }
    static BaselineSpec min() { return {BaselineKind::Min, {}}; }
    static BaselineSpec averaging() { return {BaselineKind::Averaging, {}}; }
    static BaselineSpec weighted(std::vector<WeightedLevel> map) {
        return {BaselineKind::Weighted, std::move(map)};
    }

    /// Stock per-type assignment for the three standard privacy profiles.
    static std::vector<WeightedLevel> default_weighted_map() {
        return {{0.2, 2}, {0.5, 5}, {0.8, 8}};
    }
};

/// Expected level the baseline offers under `params`. Weighted requires a
/// map entry (within 1e-9 on the privacy factor) for every type present.
inline double baseline_level(const BaselineSpec& spec, const GameParams& params,
                             const SolveOptions& opt = {}) {
    switch (spec.kind) {
        case BaselineKind::Max:
            return params.max_level();
        case BaselineKind::Min:
            return params.min_level();
        case BaselineKind::Weighted: {
            double acc = 0.0;
            for (const auto& entry : params.types.entries) {
                const WeightedLevel* hit = nullptr;
                for (const auto& wl : spec.weighted_map)
                    if (std::fabs(wl.privacy_factor - entry.type.privacy_factor) <= 1e-9) {
                        hit = &wl;
                        break;
                    }
                if (!hit)
                    throw std::invalid_argument(
                        "Weighted baseline has no level for privacy_factor " +
                        detail::fmt(entry.type.privacy_factor));
                acc += entry.weight * hit->level;
            }
            return std::clamp(std::floor(acc), params.min_level(), params.max_level());
        }
        case BaselineKind::Averaging: {
            double mean_pi = 0.0;
            for (const auto& entry : params.types.entries)
                mean_pi += entry.weight * entry.type.privacy_factor;
            GameParams collapsed = params;
            collapsed.types.entries = {{UserType{mean_pi, "average"}, 1.0}};
            return solve_sse(collapsed, opt).s_hat_star;
        }
    }
    throw std::logic_error("baseline_level: unknown kind");
}

struct StrategyEvaluation {
    double s_hat = 0.0;
    double company_payoff = 0.0;
    std::vector<BestResponse> responses;  // aligned with params.types.entries
    std::vector<double> user_payoffs;
};

/// Company payoff and per-type responses when the company commits to an
/// arbitrary expected level (followers still best-respond).
inline StrategyEvaluation evaluate_strategy(double s_hat, const GameParams& params) {
    detail::check_level_in_range(s_hat, params, "evaluate_strategy");
    auto ev = detail::evaluate_level(s_hat, params);
    StrategyEvaluation out;
    out.s_hat = s_hat;
    out.company_payoff = ev.payoff;
    out.responses = std::move(ev.responses);
    out.user_payoffs.reserve(out.responses.size());
    for (const auto& br : out.responses) out.user_payoffs.push_back(br.payoff);
    return out;
}

inline StrategyEvaluation evaluate_baseline(const BaselineSpec& spec,
                                            const GameParams& params,
                                            const SolveOptions& opt = {}) {
    return evaluate_strategy(baseline_level(spec, params, opt), params);
}

}  // namespace lpg
