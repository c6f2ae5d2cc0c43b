#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lpg/baselines.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace lpg;

namespace {

GameParams reference_game(double lhat = 2.0) {
    GameParams p;
    p.visit_time = 84;
    p.min_connect = 2;
    p.expected_loc_error = lhat;
    p.unit_service_cost = 1.0;
    p.unit_service_benefit = 1.5;
    p.service_levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    p.types.entries = {{UserType{0.2, "PU"}, 0.2},
                       {UserType{0.5, "PP"}, 0.55},
                       {UserType{0.8, "PF"}, 0.25}};
    return p;
}

}  // namespace

TEST_CASE("max and min baselines bracket the offered levels") {
    const auto p = reference_game();
    REQUIRE(baseline_level(BaselineSpec::max(), p) == 10.0);
    REQUIRE(baseline_level(BaselineSpec::min(), p) == 1.0);
}

TEST_CASE("weighted baseline floors the prior-weighted level") {
    const auto p = reference_game();
    const auto spec = BaselineSpec::weighted(BaselineSpec::default_weighted_map());
    REQUIRE(baseline_level(spec, p) == 5.0);  // floor(0.2*2 + 0.55*5 + 0.25*8)

    auto single = reference_game();
    single.types.entries = {{UserType{0.5, ""}, 1.0}};
    REQUIRE(baseline_level(spec, single) == 5.0);

    auto clamped = reference_game();
    clamped.types.entries = {{UserType{0.5, ""}, 1.0}};
    REQUIRE(baseline_level(BaselineSpec::weighted({{0.5, 20}}), clamped) == 10.0);
}

TEST_CASE("weighted baseline requires a level for every type") {
    const auto p = reference_game();
    const auto spec = BaselineSpec::weighted({{0.2, 2}, {0.5, 5}});
    REQUIRE_THROWS_AS(baseline_level(spec, p), std::invalid_argument);
    REQUIRE_THROWS_WITH(baseline_level(spec, p), ContainsSubstring("privacy_factor"));
}

TEST_CASE("averaging baseline solves the collapsed single-type game") {
    auto p = reference_game();
    p.types.entries = {{UserType{0.4, ""}, 0.5}, {UserType{0.6, ""}, 0.5}};
    auto collapsed = p;
    collapsed.types.entries = {{UserType{0.5, ""}, 1.0}};
    REQUIRE(baseline_level(BaselineSpec::averaging(), p) ==
            solve_sse(collapsed).s_hat_star);
}

TEST_CASE("evaluate_strategy applies the true best responses") {
    auto p = reference_game(0.125);
    p.visit_time = 20.0;

    // thresholds at T=20: mu = {0.3125, 1.25, 5}
    const auto low = evaluate_strategy(1.0, p);
    REQUIRE(low.responses[0].t_star == 20.0);
    REQUIRE(low.responses[1].t_star == 2.0);
    REQUIRE(low.responses[2].t_star == 2.0);

    const auto high = evaluate_strategy(6.0, p);
    for (const auto& br : high.responses) REQUIRE(br.t_star == 20.0);
    REQUIRE(high.company_payoff == Approx(p.psi() * 20.0 - 6.0));

    auto all_shy = reference_game(2.0);
    all_shy.visit_time = 10.0;
    all_shy.min_connect = 2.0;
    const auto floor_ev = evaluate_strategy(1.0, all_shy);
    // every mu is at least 2.5, so everyone bails at the minimum
    REQUIRE(floor_ev.company_payoff == Approx(all_shy.psi() * 2.0 - 1.0));

    REQUIRE_THROWS_AS(evaluate_strategy(0.5, p), std::domain_error);
}

TEST_CASE("threshold rule splits the audience at the offered level") {
    GameParams p;
    p.visit_time = 10;
    p.min_connect = 2;
    p.expected_loc_error = 2;
    p.unit_service_cost = 1.0;
    p.unit_service_benefit = 1.5;
    p.service_levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    // mu = 10 * pi / (1 - pi): targets {3, 6, 9}
    p.types.entries = {{UserType{3.0 / 13.0, ""}, 0.25},
                       {UserType{0.375, ""}, 0.25},
                       {UserType{9.0 / 19.0, ""}, 0.5}};
    const auto ev = evaluate_strategy(6.0, p);
    REQUIRE(ev.responses[0].t_star == 10.0);
    REQUIRE(ev.responses[1].t_star == 10.0);  // boundary type stays (tie)
    REQUIRE(ev.responses[2].t_star == 2.0);
}

TEST_CASE("evaluating the equilibrium level reproduces the equilibrium payoff") {
    const auto p = reference_game(0.125);
    const auto sse = solve_sse(p);
    const auto ev = evaluate_strategy(sse.s_hat_star, p);
    REQUIRE(ev.company_payoff == sse.company_payoff);
}

TEST_CASE("the equilibrium dominates every baseline") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        GameParams p;
        p.visit_time = 4.0 + 196.0 * unit(rng);
        p.min_connect = 0.5 + (p.visit_time / 2.0 - 0.5) * unit(rng);
        p.expected_loc_error = 0.1 + 59.9 * unit(rng);
        p.unit_service_cost = 0.1 + 2.9 * unit(rng);
        p.unit_service_benefit = 0.1 + 2.9 * unit(rng);
        p.service_levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        const int k = 1 + static_cast<int>(unit(rng) * 4.0);
        std::vector<double> w(k);
        double sum = 0.0;
        for (auto& x : w) {
            x = 0.05 + unit(rng);
            sum += x;
        }
        std::vector<WeightedLevel> map;
        for (int j = 0; j < k; ++j) {
            const double pi = 0.01 + 0.98 * unit(rng);
            p.types.entries.push_back({UserType{pi, ""}, w[j] / sum});
            map.push_back({pi, 1 + static_cast<int>(unit(rng) * 9.99)});
        }
        const auto sse = solve_sse(p);
        for (const auto& spec :
             {BaselineSpec::max(), BaselineSpec::min(), BaselineSpec::weighted(map),
              BaselineSpec::averaging()}) {
            const auto ev = evaluate_strategy(baseline_level(spec, p), p);
            REQUIRE(sse.company_payoff >= ev.company_payoff - 1e-12);
        }
    }
}

TEST_CASE("min beats max when no threshold sits inside the offered range") {
    auto p = reference_game();
    p.visit_time = 10;
    // mu values 0.101... and 90: nothing in (1, 10]
    p.types.entries = {{UserType{0.01, ""}, 0.5}, {UserType{0.9, ""}, 0.5}};
    const auto at_min = evaluate_strategy(baseline_level(BaselineSpec::min(), p), p);
    const auto at_max = evaluate_strategy(baseline_level(BaselineSpec::max(), p), p);
    REQUIRE(at_min.company_payoff >= at_max.company_payoff);
}

TEST_CASE("baseline names round-trip") {
    for (const auto kind : {BaselineKind::Max, BaselineKind::Min, BaselineKind::Weighted,
                            BaselineKind::Averaging})
        REQUIRE(baseline_from_string(to_string(kind)) == kind);
    REQUIRE_FALSE(baseline_from_string("median").has_value());
}
