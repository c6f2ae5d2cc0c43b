#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "lpg/config.hpp"

namespace lpg {

struct ProfileInfo {
    std::string name;
    std::string summary;
};

namespace detail {

inline std::vector<int> levels_1_to_10() {
    std::vector<int> v(10);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

/// Reference three-type game: privacy-unconcerned / pragmatist /
/// fundamentalist segmentation with skewed prior (0.2, 0.55, 0.25),
/// T = 84, delta = 2, Theta = 1, Xi = 1.5, levels 1..10.
inline GameParams reference_game(double lhat) {
    GameParams p;
    p.visit_time = 84.0;
    p.min_connect = 2.0;
    p.expected_loc_error = lhat;
    p.unit_service_cost = 1.0;
    p.unit_service_benefit = 1.5;
    p.service_levels = levels_1_to_10();
    p.types.entries = {{UserType{0.2, "PU"}, 0.2},
                       {UserType{0.5, "PP"}, 0.55},
                       {UserType{0.8, "PF"}, 0.25}};
    return p;
}

inline SweepSpec t_sweep() { return {"T", 4.0, 180.0, 1.0}; }

inline std::vector<BaselineSpec> all_baselines() {
    return {BaselineSpec::max(), BaselineSpec::min(),
            BaselineSpec::weighted(BaselineSpec::default_weighted_map()),
            BaselineSpec::averaging()};
}

inline ExperimentConfig fig1_profile(double lhat) {
    ExperimentConfig cfg;
    cfg.game = reference_game(lhat);
    cfg.lhat_given = true;
    cfg.sweep = t_sweep();
    return cfg;
}

inline LocalizationScene corner_scene() {
    LocalizationScene scene;
    scene.stations = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}, {10.0, 10.0}};
    scene.area = {0.0, 0.0, 10.0, 10.0};
    scene.model.p0_dbm = -59.0;
    scene.model.d0_m = 0.7;
    scene.model.exponents.assign(4, 0.75);
    scene.model.noise_std_db = 1.0;
    scene.packets_per_sample = 1000;
    return scene;
}

}  // namespace detail

inline const std::vector<ProfileInfo>& profile_list() {
    static const std::vector<ProfileInfo> list = {
        {"fig1-1000", "reference game at l-hat 40.12 m (1000-packet deployment), T sweep"},
        {"fig1-500", "reference game at l-hat 46.64 m (500-packet deployment), T sweep"},
        {"fig1-200", "reference game at l-hat 58.04 m (200-packet deployment), T sweep"},
        {"fig2", "uniform type prior, l-hat 0.125, all four baselines, T sweep"},
        {"fig3", "skewed type prior (0.2/0.55/0.25), l-hat 0.125, all four baselines, T sweep"},
        {"fig5", "single-point reference game (T=84, l-hat=2), no sweep"},
        {"fig5-calibrated", "threshold-slope calibration (0.033/0.1/0.3), l-hat 0.2, T sweep"},
        {"venue-sim", "4-station 10x10 m venue, estimate l-hat at 200/500/1000 packets"},
    };
    return list;
}

/// Named preset. Unknown names raise ConfigError listing the options.
inline ExperimentConfig profile_config(const std::string& name) {
    if (name == "fig1-1000") return detail::fig1_profile(40.12);
    if (name == "fig1-500") return detail::fig1_profile(46.64);
    if (name == "fig1-200") return detail::fig1_profile(58.04);
    if (name == "fig2" || name == "fig3") {
        ExperimentConfig cfg;
        // l-hat chosen so every strategy's payoff starts positive and turns
        // negative inside the T=4..180 window (Psi*T = Xi/l-hat = 12)
        cfg.game = detail::reference_game(0.125);
        if (name == "fig2") {
            const double third = 1.0 / 3.0;
            for (auto& e : cfg.game.types.entries) e.weight = third;
        }
        cfg.lhat_given = true;
        cfg.sweep = detail::t_sweep();
        cfg.baselines = detail::all_baselines();
        return cfg;
    }
    if (name == "fig5") {
        ExperimentConfig cfg;
        cfg.game = detail::reference_game(2.0);
        cfg.lhat_given = true;
        return cfg;
    }
    if (name == "fig5-calibrated") {
        ExperimentConfig cfg;
        // privacy factors with odds 1/3, 1, 3 and l-hat/delta = 0.1 give
        // threshold slopes 1/30, 0.1, 0.3
        cfg.game = detail::reference_game(0.2);
        cfg.game.types.entries[0].type.privacy_factor = 0.25;
        cfg.game.types.entries[1].type.privacy_factor = 0.5;
        cfg.game.types.entries[2].type.privacy_factor = 0.75;
        cfg.lhat_given = true;
        cfg.sweep = detail::t_sweep();
        return cfg;
    }
    if (name == "venue-sim") {
        ExperimentConfig cfg;
        cfg.game = detail::reference_game(1.0);
        cfg.game.expected_loc_error = std::numeric_limits<double>::quiet_NaN();
        cfg.lhat_given = false;
        cfg.scene = detail::corner_scene();
        cfg.localize.samples = 1000;
        cfg.localize.packet_counts = {200, 500, 1000};
        return cfg;
    }
    std::string names;
    for (const auto& p : profile_list()) {
        if (!names.empty()) names += ", ";
        names += p.name;
    }
    throw ConfigError("unknown profile \"" + name + "\" (available: " + names + ")");
}

}  // namespace lpg
