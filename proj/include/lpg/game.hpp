#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpg {

/// Absolute tolerance for "these weights form a distribution".
inline constexpr double kWeightSumTol = 1e-12;

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

/// One follower type, identified by how much it values location privacy
/// relative to service quality.
///
/// privacy_factor = 1 is allowed but degenerate: the payoff is then strictly
/// decreasing in connection time, so the type disconnects at the minimum no
/// matter what the company offers (ignores_service() flags this).
struct UserType {
    double privacy_factor = 0.5;  // in [0, 1]
    std::string label;

    bool ignores_service() const { return privacy_factor >= 1.0; }
};

struct TypeEntry {
    UserType type;
    double weight = 1.0;  // prior probability of this type
};

/// Prior over user types.
struct TypeDistribution {
    std::vector<TypeEntry> entries;

    std::size_t size() const { return entries.size(); }

    void validate() const {
        if (entries.empty())
            throw std::invalid_argument("types: at least one user type is required");
        double sum = 0.0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            if (!(e.type.privacy_factor >= 0.0 && e.type.privacy_factor <= 1.0))
                throw std::invalid_argument("types[" + std::to_string(i) +
                                            "].privacy_factor must lie in [0, 1], got " +
                                            detail::fmt(e.type.privacy_factor));
            if (!(e.weight >= 0.0))
                throw std::invalid_argument("types[" + std::to_string(i) +
                                            "].weight must be >= 0, got " +
                                            detail::fmt(e.weight));
            sum += e.weight;
        }
        if (std::fabs(sum - 1.0) > kWeightSumTol)
            throw std::invalid_argument("type weights must sum to 1, got " +
                                        detail::fmt(sum));
    }
};

/// Scalar game parameters plus the type prior.
///
/// Connection time is real-valued in [min_connect, visit_time]; service
/// levels are the company's discrete offerings, strictly increasing and
/// at least 1.
struct GameParams {
    double visit_time = 0.0;           // T: total time at the venue, minutes
    double min_connect = 0.0;          // delta: shortest usable connection
    double expected_loc_error = 0.0;   // l-hat: localization error, meters
    double unit_service_cost = 0.0;    // Theta: company cost per level unit
    double unit_service_benefit = 0.0; // Xi: company value of a fully tracked visit
    std::vector<int> service_levels;
    TypeDistribution types;

    double min_level() const { return static_cast<double>(service_levels.front()); }
    double max_level() const { return static_cast<double>(service_levels.back()); }

    /// Psi = Xi / (T * l-hat): company value per minute of tracked presence.
    double psi() const {
        return unit_service_benefit / (visit_time * expected_loc_error);
    }

    void validate() const {
        if (!(visit_time > 0.0))
            throw std::invalid_argument("visit_time must be > 0, got " +
                                        detail::fmt(visit_time));
        if (!(min_connect > 0.0 && min_connect <= visit_time))
            throw std::invalid_argument(
                "min_connect must satisfy 0 < min_connect <= visit_time, got " +
                detail::fmt(min_connect) + " with visit_time " + detail::fmt(visit_time));
        if (!(expected_loc_error > 0.0))
            throw std::invalid_argument("expected_loc_error must be > 0, got " +
                                        detail::fmt(expected_loc_error));
        if (!(unit_service_cost > 0.0))
            throw std::invalid_argument("unit_service_cost must be > 0, got " +
                                        detail::fmt(unit_service_cost));
        if (!(unit_service_benefit > 0.0))
            throw std::invalid_argument("unit_service_benefit must be > 0, got " +
                                        detail::fmt(unit_service_benefit));
        if (service_levels.empty())
            throw std::invalid_argument("service_levels must not be empty");
        if (service_levels.front() < 1)
            throw std::invalid_argument("service_levels must all be >= 1, got " +
                                        std::to_string(service_levels.front()));
        for (std::size_t i = 1; i < service_levels.size(); ++i)
            if (service_levels[i] <= service_levels[i - 1])
                throw std::invalid_argument("service_levels must be strictly increasing");
        types.validate();
    }
};

namespace detail {

inline void check_connection_time(double t, const GameParams& p, const char* op) {
    if (!(t >= p.min_connect && t <= p.visit_time))
        throw std::domain_error(std::string(op) + ": connection time " + fmt(t) +
                                " outside [min_connect, visit_time] = [" +
                                fmt(p.min_connect) + ", " + fmt(p.visit_time) + "]");
}

inline void check_level_in_range(double s_hat, const GameParams& p, const char* op) {
    if (!(s_hat >= p.min_level() && s_hat <= p.max_level()))
        throw std::domain_error(std::string(op) + ": service level " + fmt(s_hat) +
                                " outside [" + fmt(p.min_level()) + ", " +
                                fmt(p.max_level()) + "]");
}

}  // namespace detail

/// Location privacy enjoyed by a user connecting for t of the T minutes:
/// the localization error inflated by the unobserved fraction of the visit,
/// p(t) = (T / t) * l-hat. Decreasing and convex in t; p(T) = l-hat.
inline double privacy(double t, const GameParams& params) {
    detail::check_connection_time(t, params, "privacy");
    return params.visit_time / t * params.expected_loc_error;
}

/// Service quality actually experienced when connected for t of T minutes
/// under expected offered level s_hat: sigma(t, s_hat) = (t / T) * s_hat.
inline double experienced_service(double t, double s_hat, const GameParams& params) {
    detail::check_connection_time(t, params, "experienced_service");
    detail::check_level_in_range(s_hat, params, "experienced_service");
    return t / params.visit_time * s_hat;
}

/// A user's payoff: privacy and experienced service blended by the type's
/// privacy factor.
inline double user_payoff(const UserType& type, double s_hat, double t,
                          const GameParams& params) {
    const double pi = type.privacy_factor;
    return pi * privacy(t, params) +
           (1.0 - pi) * experienced_service(t, s_hat, params);
}

struct LevelShare {
    int level = 0;
    double prob = 0.0;
};

/// Company strategy: a probability distribution over service levels.
/// Pure strategies are the single-point case.
class CompanyStrategy {
public:
    static CompanyStrategy pure(int level) {
        CompanyStrategy s;
        s.support_.push_back({level, 1.0});
        return s;
    }

    /// Support levels must be distinct; probabilities must be nonnegative
    /// and sum to 1 (within kWeightSumTol).
    static CompanyStrategy mixed(std::vector<LevelShare> support) {
        if (support.empty())
            throw std::invalid_argument("mixed strategy needs a non-empty support");
        double sum = 0.0;
        for (const auto& ls : support) {
            if (!(ls.prob >= 0.0))
                throw std::invalid_argument("mixed strategy probabilities must be >= 0");
            sum += ls.prob;
        }
        if (std::fabs(sum - 1.0) > kWeightSumTol)
            throw std::invalid_argument("mixed strategy probabilities must sum to 1, got " +
                                        detail::fmt(sum));
        auto sorted = support;
        std::sort(sorted.begin(), sorted.end(),
                  [](const LevelShare& a, const LevelShare& b) { return a.level < b.level; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].level == sorted[i - 1].level)
                throw std::invalid_argument("mixed strategy support levels must be distinct");
        CompanyStrategy s;
        s.support_ = std::move(sorted);
        return s;
    }

    bool is_pure() const { return support_.size() == 1; }
    const std::vector<LevelShare>& support() const { return support_; }

    /// S-hat: the expected offered level, which is all followers react to.
    double expected_level() const {
        double acc = 0.0;
        for (const auto& ls : support_) acc += ls.prob * ls.level;
        return acc;
    }

private:
    std::vector<LevelShare> support_;
};

inline double expected_level(const CompanyStrategy& strategy) {
    return strategy.expected_level();
}

/// Smallest-support mixed strategy over `levels` with the requested expected
/// level: the two levels bracketing s_hat, or a pure strategy when s_hat is
/// itself an offered level. `levels` must be strictly increasing.
inline CompanyStrategy realize_mixed(double s_hat, std::span<const int> levels) {
    if (levels.empty())
        throw std::invalid_argument("realize_mixed: empty level set");
    const double lo = levels.front();
    const double hi = levels.back();
    if (!(s_hat >= lo && s_hat <= hi))
        throw std::domain_error("realize_mixed: expected level " + detail::fmt(s_hat) +
                                " outside [" + detail::fmt(lo) + ", " + detail::fmt(hi) + "]");
    auto it = std::lower_bound(levels.begin(), levels.end(), s_hat);
    if (it != levels.end() && static_cast<double>(*it) == s_hat)
        return CompanyStrategy::pure(*it);
    // not an exact member, so *it is the first level above and a level below exists
    const int upper = *it;
    const int lower = *std::prev(it);
    const double phi = (upper - s_hat) / (upper - lower);
    return CompanyStrategy::mixed({{lower, phi}, {upper, 1.0 - phi}});
}

/// Company expected payoff when type i responds with connection time
/// responses[i]: sum over types of weight * (Psi * t_i - Theta * s_hat).
inline double company_payoff(double s_hat, std::span<const double> responses,
                             const GameParams& params) {
    if (responses.size() != params.types.size())
        throw std::invalid_argument("company_payoff: got " +
                                    std::to_string(responses.size()) +
                                    " responses for " +
                                    std::to_string(params.types.size()) + " types");
    const double psi = params.psi();
    double total = 0.0;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        detail::check_connection_time(responses[i], params, "company_payoff");
        total += params.types.entries[i].weight *
                 (psi * responses[i] - params.unit_service_cost * s_hat);
    }
    return total;
}

inline double company_payoff(const CompanyStrategy& strategy,
                             std::span<const double> responses,
                             const GameParams& params) {
    return company_payoff(strategy.expected_level(), responses, params);
}

}  // namespace lpg
