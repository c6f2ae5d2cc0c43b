#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lpg/game.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace lpg;

namespace {

GameParams make_params(double T, double delta, double lhat, double theta = 1.0,
                       double xi = 1.5) {
    GameParams p;
    p.visit_time = T;
    p.min_connect = delta;
    p.expected_loc_error = lhat;
    p.unit_service_cost = theta;
    p.unit_service_benefit = xi;
    p.service_levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    p.types.entries = {{UserType{0.5, "PP"}, 1.0}};
    return p;
}

}  // namespace

TEST_CASE("privacy evaluates the shrinking-window hyperbola") {
    const auto p = make_params(84, 2, 2);
    REQUIRE(privacy(84.0, p) == Approx(2.0));
    REQUIRE(privacy(2.0, p) == Approx(84.0));
    const auto q = make_params(10, 2, 3);
    REQUIRE(privacy(4.0, q) == Approx(7.5));
}

TEST_CASE("privacy rejects connection times outside the window") {
    const auto p = make_params(10, 2, 3);
    REQUIRE_THROWS_AS(privacy(1.0, p), std::domain_error);
    REQUIRE_THROWS_WITH(privacy(1.0, p), ContainsSubstring("min_connect"));
    REQUIRE_THROWS_AS(privacy(11.0, p), std::domain_error);
    REQUIRE_THROWS_WITH(privacy(11.0, p), ContainsSubstring("visit_time"));
}

TEST_CASE("privacy times connection time recovers T times l-hat") {
    const auto p = make_params(84, 2, 2);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t_draw(p.min_connect, p.visit_time);
    for (int i = 0; i < 200; ++i) {
        const double t = t_draw(rng);
        REQUIRE(privacy(t, p) * t ==
                Approx(p.visit_time * p.expected_loc_error).epsilon(1e-12));
    }
}

TEST_CASE("experienced service is the time-prorated offered level") {
    const auto p = make_params(84, 2, 2);
    REQUIRE(experienced_service(84.0, 7.0, p) == Approx(7.0));
    REQUIRE(experienced_service(2.0, 10.0, p) == Approx(0.2381).margin(1e-4));
    const auto q = make_params(4, 2, 2);
    REQUIRE(experienced_service(2.0, 1.0, q) == Approx(0.5));
    REQUIRE_THROWS_AS(experienced_service(3.0, 0.5, p), std::domain_error);
    REQUIRE_THROWS_AS(experienced_service(3.0, 11.0, p), std::domain_error);
}

TEST_CASE("user payoff blends privacy and service by the privacy factor") {
    const auto p = make_params(10, 2, 2);
    const UserType all_privacy{1.0, ""};
    const UserType all_service{0.0, ""};
    for (double t : {2.0, 5.0, 10.0}) {
        REQUIRE(user_payoff(all_privacy, 1.0, t, p) == Approx(privacy(t, p)));
        REQUIRE(user_payoff(all_privacy, 10.0, t, p) == Approx(privacy(t, p)));
        REQUIRE(user_payoff(all_service, 7.0, t, p) ==
                Approx(experienced_service(t, 7.0, p)));
    }
    REQUIRE(user_payoff(UserType{0.5, ""}, 10.0, 10.0, p) == Approx(6.0));
}

TEST_CASE("user payoff is convex in connection time") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> pi_draw(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto p = make_params(4.0 + 96.0 * pi_draw(rng), 2.0, 0.1 + 10.0 * pi_draw(rng));
        const UserType type{pi_draw(rng), ""};
        const double s_hat = 1.0 + 9.0 * pi_draw(rng);
        std::uniform_real_distribution<double> t_draw(p.min_connect, p.visit_time);
        double ts[3] = {t_draw(rng), t_draw(rng), t_draw(rng)};
        std::sort(ts, ts + 3);
        if (ts[0] == ts[1] || ts[1] == ts[2]) continue;
        const double fa = user_payoff(type, s_hat, ts[0], p);
        const double fb = user_payoff(type, s_hat, ts[1], p);
        const double fc = user_payoff(type, s_hat, ts[2], p);
        const double lam = (ts[1] - ts[0]) / (ts[2] - ts[0]);
        const double chord = (1.0 - lam) * fa + lam * fc;
        REQUIRE(fb <= chord + 1e-12 * std::max(1.0, std::fabs(chord)));
    }
}

TEST_CASE("user payoff grows with the offered level unless privacy is everything") {
    const auto p = make_params(20, 2, 3);
    const double t = 7.0;
    REQUIRE(user_payoff(UserType{0.3, ""}, 8.0, t, p) >
            user_payoff(UserType{0.3, ""}, 2.0, t, p));
    REQUIRE(user_payoff(UserType{1.0, ""}, 8.0, t, p) ==
            user_payoff(UserType{1.0, ""}, 2.0, t, p));
}

TEST_CASE("company payoff sums weighted per-type margins") {
    auto p = make_params(10, 2, 2);
    REQUIRE(company_payoff(1.0, std::vector<double>{2.0}, p) == Approx(-0.85));

    auto uniform3 = make_params(10, 2, 2);
    const double third = 1.0 / 3.0;
    uniform3.types.entries = {{UserType{0.1, ""}, third},
                              {UserType{0.5, ""}, third},
                              {UserType{0.9, ""}, third}};
    const std::vector<double> all_t(3, 10.0);
    REQUIRE(company_payoff(4.0, all_t, uniform3) ==
            Approx(uniform3.psi() * 10.0 - 1.0 * 4.0));

    auto two = make_params(10, 2, 2);
    two.types.entries = {{UserType{0.2, ""}, 0.5}, {UserType{0.8, ""}, 0.5}};
    REQUIRE(company_payoff(3.0, std::vector<double>{2.0, 10.0}, two) ==
            Approx(0.5 * two.psi() * (2.0 + 10.0) - 1.0 * 3.0));
}

TEST_CASE("company payoff validates the response vector") {
    const auto p = make_params(10, 2, 2);
    REQUIRE_THROWS_AS(company_payoff(1.0, std::vector<double>{2.0, 2.0}, p),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(company_payoff(1.0, std::vector<double>{1.0}, p),
                      std::domain_error);
}

TEST_CASE("company payoff falls linearly in the offered level") {
    const auto p = make_params(10, 2, 2, 1.7);
    const std::vector<double> resp{2.0};
    const double f3 = company_payoff(3.0, resp, p);
    const double f7 = company_payoff(7.0, resp, p);
    REQUIRE((f7 - f3) / 4.0 == Approx(-1.7).epsilon(1e-12));
}

TEST_CASE("expected level averages the strategy support") {
    REQUIRE(CompanyStrategy::pure(5).expected_level() == Approx(5.0));
    REQUIRE(expected_level(CompanyStrategy::mixed({{4, 0.5}, {6, 0.5}})) == Approx(5.0));
    REQUIRE(expected_level(CompanyStrategy::mixed({{1, 0.9}, {10, 0.1}})) == Approx(1.9));
}

TEST_CASE("mixed strategies validate their distribution") {
    REQUIRE_THROWS_AS(CompanyStrategy::mixed({}), std::invalid_argument);
    REQUIRE_THROWS_AS(CompanyStrategy::mixed({{4, 0.6}, {6, 0.6}}), std::invalid_argument);
    REQUIRE_THROWS_AS(CompanyStrategy::mixed({{4, -0.1}, {6, 1.1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(CompanyStrategy::mixed({{4, 0.5}, {4, 0.5}}), std::invalid_argument);
}

TEST_CASE("realize_mixed picks the tightest bracketing pair") {
    const std::vector<int> levels{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    const auto pure7 = realize_mixed(7.0, levels);
    REQUIRE(pure7.is_pure());
    REQUIRE(pure7.support().front().level == 7);

    const auto mix = realize_mixed(7.25, levels);
    REQUIRE_FALSE(mix.is_pure());
    REQUIRE(mix.support().size() == 2);
    REQUIRE(mix.support()[0].level == 7);
    REQUIRE(mix.support()[0].prob == Approx(0.75));
    REQUIRE(mix.support()[1].level == 8);
    REQUIRE(mix.support()[1].prob == Approx(0.25));

    const auto lo = realize_mixed(1.0, levels);
    REQUIRE(lo.is_pure());
    REQUIRE(lo.support().front().level == 1);

    REQUIRE_THROWS_AS(realize_mixed(0.99, levels), std::domain_error);
    REQUIRE_THROWS_AS(realize_mixed(10.01, levels), std::domain_error);
}

TEST_CASE("realize_mixed round-trips the expected level") {
    const std::vector<int> levels{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> draw(1.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = draw(rng);
        REQUIRE(expected_level(realize_mixed(x, levels)) == Approx(x).margin(1e-12));
    }
}

TEST_CASE("game parameter validation names the offending field") {
    auto ok = make_params(10, 2, 2);
    REQUIRE_NOTHROW(ok.validate());

    auto p = ok;
    p.visit_time = 0.0;
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("visit_time"));

    p = ok;
    p.min_connect = 11.0;
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("min_connect"));

    p = ok;
    p.expected_loc_error = -1.0;
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("expected_loc_error"));

    p = ok;
    p.unit_service_cost = 0.0;
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("unit_service_cost"));

    p = ok;
    p.service_levels = {};
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("service_levels"));

    p = ok;
    p.service_levels = {1, 3, 3};
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("strictly increasing"));

    p = ok;
    p.service_levels = {0, 1};
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring(">= 1"));

    p = ok;
    p.types.entries.clear();
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("type"));

    p = ok;
    p.types.entries[0].weight = 0.5;
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("sum to 1"));

    p = ok;
    p.types.entries[0].type.privacy_factor = 1.5;
    REQUIRE_THROWS_WITH(p.validate(), ContainsSubstring("privacy_factor"));
}

TEST_CASE("degenerate privacy factors are admitted and flagged") {
    REQUIRE(UserType{1.0, ""}.ignores_service());
    REQUIRE_FALSE(UserType{0.99, ""}.ignores_service());
    auto p = make_params(10, 2, 2);
    p.types.entries = {{UserType{1.0, "paranoid"}, 1.0}};
    REQUIRE_NOTHROW(p.validate());
}
