#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpg/baselines.hpp"
#include "lpg/errors.hpp"
#include "lpg/game.hpp"
#include "lpg/localization.hpp"

namespace lpg {

/// Sweep of one game parameter (only the visit time is sweepable).
struct SweepSpec {
    std::string variable = "T";
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const {
        std::vector<double> out;
        // integer step counter avoids drift over long sweeps
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        out.reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k) out.push_back(start + step * static_cast<double>(k));
        return out;
    }
};

struct LocalizeSpec {
    std::size_t samples = 1000;
    std::vector<int> packet_counts;  // empty: use the scene's packet count
    bool keep_samples = true;        // write per-sample CSVs
};

/// One experiment: a game, optionally a deployment scene to measure l-hat
/// from, and what to do with them. Exactly one of game.expected_loc_error
/// and scene must be provided.
struct ExperimentConfig {
    GameParams game;
    bool lhat_given = false;  // game.expected_loc_error came from the config
    std::optional<LocalizationScene> scene;
    std::optional<SweepSpec> sweep;
    std::vector<BaselineSpec> baselines;
    LocalizeSpec localize;
    std::uint64_t seed = 1;
    std::string output = "out";
    bool integer_levels = false;

    void validate() const {
        if (lhat_given && scene)
            throw ConfigError(
                "config: give either game.expected_loc_error or scene, not both");
        if (!lhat_given && !scene)
            throw ConfigError(
                "config: one of game.expected_loc_error or scene is required");
        GameParams g = game;
        if (!lhat_given) g.expected_loc_error = 1.0;  // placeholder for validation
        try {
            g.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: game: ") + e.what());
        }
        if (scene) {
            try {
                scene->validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("config: scene: ") + e.what());
            }
            // DegenerateGeometryError passes through untouched
        }
        if (sweep) {
            if (sweep->variable != "T")
                throw ConfigError("config: sweep.variable: only \"T\" is supported, got \"" +
                                  sweep->variable + "\"");
            if (!(sweep->step > 0.0))
                throw ConfigError("config: sweep.step must be > 0");
            if (!(sweep->stop > sweep->start))
                throw ConfigError("config: sweep.stop must be > sweep.start");
            if (!(sweep->start >= game.min_connect))
                throw ConfigError("config: sweep.start must be >= game.min_connect");
        }
        if (localize.samples == 0)
            throw ConfigError("config: localize.samples must be >= 1");
        for (int k : localize.packet_counts)
            if (k < 1) throw ConfigError("config: localize.packet_counts entries must be >= 1");
        for (const auto& b : baselines)
            if (b.kind == BaselineKind::Weighted && b.weighted_map.empty())
                throw ConfigError("config: weighted baseline needs a non-empty map");
    }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void cfg_fail(const std::string& msg) { throw ConfigError(msg); }

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& path) {
    if (!obj.is_object()) cfg_fail(path + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) cfg_fail(path + ": unknown field \"" + it.key() + "\"");
    }
}

inline const json& need(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) cfg_fail(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) cfg_fail(path + "." + key + ": required field missing");
    return *it;
}

inline double as_num(const json& j, const std::string& path) {
    if (!j.is_number()) cfg_fail(path + ": expected a number");
    return j.get<double>();
}

inline double need_num(const json& obj, const char* key, const std::string& path) {
    return as_num(need(obj, key, path), path + "." + key);
}

inline int need_int(const json& obj, const char* key, const std::string& path) {
    const json& j = need(obj, key, path);
    if (!j.is_number_integer()) cfg_fail(path + "." + key + ": expected an integer");
    return j.get<int>();
}

inline GameParams parse_game(const json& g, bool* lhat_given) {
    const std::string path = "config.game";
    if (!g.is_object()) cfg_fail(path + ": expected an object");
    check_keys(g,
               {"visit_time", "min_connect", "expected_loc_error", "unit_service_cost",
                "unit_service_benefit", "service_levels", "types"},
               path);
    GameParams p;
    p.visit_time = need_num(g, "visit_time", path);
    p.min_connect = need_num(g, "min_connect", path);
    p.unit_service_cost = need_num(g, "unit_service_cost", path);
    p.unit_service_benefit = need_num(g, "unit_service_benefit", path);
    if (const auto it = g.find("expected_loc_error"); it != g.end()) {
        p.expected_loc_error = as_num(*it, path + ".expected_loc_error");
        *lhat_given = true;
    } else {
        p.expected_loc_error = std::numeric_limits<double>::quiet_NaN();
        *lhat_given = false;
    }

    const json& levels = need(g, "service_levels", path);
    if (levels.is_array()) {
        for (const auto& l : levels) {
            if (!l.is_number_integer())
                cfg_fail(path + ".service_levels: expected integers");
            p.service_levels.push_back(l.get<int>());
        }
    } else if (levels.is_object()) {
        check_keys(levels, {"min", "max"}, path + ".service_levels");
        const int lo = need_int(levels, "min", path + ".service_levels");
        const int hi = need_int(levels, "max", path + ".service_levels");
        if (hi < lo) cfg_fail(path + ".service_levels: max must be >= min");
        for (int l = lo; l <= hi; ++l) p.service_levels.push_back(l);
    } else {
        cfg_fail(path + ".service_levels: expected an array or {min, max}");
    }

    const json& types = need(g, "types", path);
    if (!types.is_array() || types.empty())
        cfg_fail(path + ".types: expected a non-empty array");
    for (std::size_t i = 0; i < types.size(); ++i) {
        const std::string tp = path + ".types[" + std::to_string(i) + "]";
        const json& t = types[i];
        if (!t.is_object()) cfg_fail(tp + ": expected an object");
        check_keys(t, {"label", "privacy_factor", "weight"}, tp);
        TypeEntry entry;
        entry.type.privacy_factor = need_num(t, "privacy_factor", tp);
        entry.weight = need_num(t, "weight", tp);
        if (const auto it = t.find("label"); it != t.end()) {
            if (!it->is_string()) cfg_fail(tp + ".label: expected a string");
            entry.type.label = it->get<std::string>();
        }
        p.types.entries.push_back(std::move(entry));
    }
    return p;
}

inline LocalizationScene parse_scene(const json& s) {
    const std::string path = "config.scene";
    if (!s.is_object()) cfg_fail(path + ": expected an object");
    check_keys(s, {"stations", "area", "path_loss", "packets_per_sample"}, path);
    LocalizationScene scene;

    const json& stations = need(s, "stations", path);
    if (!stations.is_array()) cfg_fail(path + ".stations: expected an array");
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const json& st = stations[i];
        const std::string sp = path + ".stations[" + std::to_string(i) + "]";
        if (!st.is_array() || st.size() != 2) cfg_fail(sp + ": expected [x, y]");
        scene.stations.push_back({as_num(st[0], sp + "[0]"), as_num(st[1], sp + "[1]")});
    }

    const json& area = need(s, "area", path);
    check_keys(area, {"xmin", "ymin", "xmax", "ymax"}, path + ".area");
    scene.area = {need_num(area, "xmin", path + ".area"), need_num(area, "ymin", path + ".area"),
                  need_num(area, "xmax", path + ".area"), need_num(area, "ymax", path + ".area")};

    const json& pl = need(s, "path_loss", path);
    check_keys(pl, {"p0_dbm", "d0_m", "exponent", "exponents", "noise_std_db"},
               path + ".path_loss");
    scene.model.p0_dbm = need_num(pl, "p0_dbm", path + ".path_loss");
    scene.model.d0_m = need_num(pl, "d0_m", path + ".path_loss");
    scene.model.noise_std_db = need_num(pl, "noise_std_db", path + ".path_loss");
    const bool has_scalar = pl.contains("exponent");
    const bool has_array = pl.contains("exponents");
    if (has_scalar == has_array)
        cfg_fail(path + ".path_loss: give exactly one of exponent or exponents");
    if (has_scalar) {
        scene.model.exponents.assign(scene.stations.size(),
                                     need_num(pl, "exponent", path + ".path_loss"));
    } else {
        for (const auto& e : pl["exponents"])
            scene.model.exponents.push_back(as_num(e, path + ".path_loss.exponents[]"));
    }

    if (const auto it = s.find("packets_per_sample"); it != s.end()) {
        if (!it->is_number_integer())
            cfg_fail(path + ".packets_per_sample: expected an integer");
        scene.packets_per_sample = it->get<int>();
    }
    return scene;
}

inline BaselineSpec parse_baseline(const json& b, const std::string& path) {
    if (b.is_string()) {
        const auto kind = baseline_from_string(b.get<std::string>());
        if (!kind) cfg_fail(path + ": unknown baseline \"" + b.get<std::string>() + "\"");
        if (*kind == BaselineKind::Weighted)
            return BaselineSpec::weighted(BaselineSpec::default_weighted_map());
        return {*kind, {}};
    }
    if (!b.is_object()) cfg_fail(path + ": expected a string or an object");
    check_keys(b, {"kind", "map"}, path);
    const json& kj = need(b, "kind", path);
    if (!kj.is_string()) cfg_fail(path + ".kind: expected a string");
    const auto kind = baseline_from_string(kj.get<std::string>());
    if (!kind) cfg_fail(path + ".kind: unknown baseline \"" + kj.get<std::string>() + "\"");
    BaselineSpec spec{*kind, {}};
    if (const auto it = b.find("map"); it != b.end()) {
        if (!it->is_array()) cfg_fail(path + ".map: expected an array of [privacy_factor, level]");
        for (const auto& pair : *it) {
            if (!pair.is_array() || pair.size() != 2 || !pair[1].is_number_integer())
                cfg_fail(path + ".map: expected [privacy_factor, level] pairs");
            spec.weighted_map.push_back(
                {as_num(pair[0], path + ".map[][0]"), pair[1].get<int>()});
        }
    } else if (*kind == BaselineKind::Weighted) {
        spec.weighted_map = BaselineSpec::default_weighted_map();
    }
    return spec;
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    using detail::cfg_fail;
    if (!j.is_object()) cfg_fail("config: expected a JSON object");
    detail::check_keys(j,
                       {"game", "scene", "sweep", "baselines", "localize", "seed", "output",
                        "integer_levels"},
                       "config");
    ExperimentConfig cfg;
    cfg.game = detail::parse_game(detail::need(j, "game", "config"), &cfg.lhat_given);
    if (j.contains("scene")) cfg.scene = detail::parse_scene(j["scene"]);
    if (j.contains("sweep")) {
        const nlohmann::json& s = j["sweep"];
        detail::check_keys(s, {"variable", "start", "stop", "step"}, "config.sweep");
        SweepSpec sweep;
        if (const auto it = s.find("variable"); it != s.end()) {
            if (!it->is_string()) cfg_fail("config.sweep.variable: expected a string");
            sweep.variable = it->get<std::string>();
        }
        sweep.start = detail::need_num(s, "start", "config.sweep");
        sweep.stop = detail::need_num(s, "stop", "config.sweep");
        sweep.step = detail::need_num(s, "step", "config.sweep");
        cfg.sweep = sweep;
    }
    if (j.contains("baselines")) {
        const nlohmann::json& bs = j["baselines"];
        if (!bs.is_array()) cfg_fail("config.baselines: expected an array");
        for (std::size_t i = 0; i < bs.size(); ++i)
            cfg.baselines.push_back(
                detail::parse_baseline(bs[i], "config.baselines[" + std::to_string(i) + "]"));
    }
    if (j.contains("localize")) {
        const nlohmann::json& l = j["localize"];
        detail::check_keys(l, {"samples", "packet_counts", "keep_samples"}, "config.localize");
        if (const auto it = l.find("samples"); it != l.end()) {
            if (!it->is_number_integer() || it->get<long long>() < 0)
                cfg_fail("config.localize.samples: expected a nonnegative integer");
            cfg.localize.samples = it->get<std::size_t>();
        }
        if (const auto it = l.find("packet_counts"); it != l.end()) {
            if (!it->is_array()) cfg_fail("config.localize.packet_counts: expected an array");
            for (const auto& k : *it) {
                if (!k.is_number_integer())
                    cfg_fail("config.localize.packet_counts: expected integers");
                cfg.localize.packet_counts.push_back(k.get<int>());
            }
        }
        if (const auto it = l.find("keep_samples"); it != l.end()) {
            if (!it->is_boolean()) cfg_fail("config.localize.keep_samples: expected a boolean");
            cfg.localize.keep_samples = it->get<bool>();
        }
    }
    if (j.contains("seed")) {
        const nlohmann::json& s = j["seed"];
        if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0))
            cfg_fail("config.seed: expected a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) cfg_fail("config.output: expected a string");
        cfg.output = j["output"].get<std::string>();
    }
    if (j.contains("integer_levels")) {
        if (!j["integer_levels"].is_boolean())
            cfg_fail("config.integer_levels: expected a boolean");
        cfg.integer_levels = j["integer_levels"].get<bool>();
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return parse_config(j);
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json g;
    g["visit_time"] = cfg.game.visit_time;
    g["min_connect"] = cfg.game.min_connect;
    if (cfg.lhat_given) g["expected_loc_error"] = cfg.game.expected_loc_error;
    g["unit_service_cost"] = cfg.game.unit_service_cost;
    g["unit_service_benefit"] = cfg.game.unit_service_benefit;
    g["service_levels"] = cfg.game.service_levels;
    nlohmann::json types = nlohmann::json::array();
    for (const auto& e : cfg.game.types.entries) {
        nlohmann::json t;
        if (!e.type.label.empty()) t["label"] = e.type.label;
        t["privacy_factor"] = e.type.privacy_factor;
        t["weight"] = e.weight;
        types.push_back(t);
    }
    g["types"] = types;

    nlohmann::json j;
    j["game"] = g;
    if (cfg.scene) {
        nlohmann::json s;
        nlohmann::json stations = nlohmann::json::array();
        for (const auto& st : cfg.scene->stations)
            stations.push_back(nlohmann::json::array({st.x, st.y}));
        s["stations"] = stations;
        s["area"] = {{"xmin", cfg.scene->area.xmin},
                     {"ymin", cfg.scene->area.ymin},
                     {"xmax", cfg.scene->area.xmax},
                     {"ymax", cfg.scene->area.ymax}};
        nlohmann::json pl;
        pl["p0_dbm"] = cfg.scene->model.p0_dbm;
        pl["d0_m"] = cfg.scene->model.d0_m;
        pl["noise_std_db"] = cfg.scene->model.noise_std_db;
        bool uniform = true;
        for (double n : cfg.scene->model.exponents)
            if (n != cfg.scene->model.exponents.front()) uniform = false;
        if (uniform && !cfg.scene->model.exponents.empty())
            pl["exponent"] = cfg.scene->model.exponents.front();
        else
            pl["exponents"] = cfg.scene->model.exponents;
        s["path_loss"] = pl;
        s["packets_per_sample"] = cfg.scene->packets_per_sample;
        j["scene"] = s;
    }
    if (cfg.sweep)
        j["sweep"] = {{"variable", cfg.sweep->variable},
                      {"start", cfg.sweep->start},
                      {"stop", cfg.sweep->stop},
                      {"step", cfg.sweep->step}};
    if (!cfg.baselines.empty()) {
        nlohmann::json bs = nlohmann::json::array();
        for (const auto& b : cfg.baselines) {
            if (b.kind == BaselineKind::Weighted) {
                nlohmann::json map = nlohmann::json::array();
                for (const auto& wl : b.weighted_map)
                    map.push_back(nlohmann::json::array({wl.privacy_factor, wl.level}));
                bs.push_back({{"kind", "weighted"}, {"map", map}});
            } else {
                std::string name = to_string(b.kind);
                for (auto& c : name) c = static_cast<char>(std::tolower(c));
                bs.push_back(name);
            }
        }
        j["baselines"] = bs;
    }
    nlohmann::json l;
    l["samples"] = cfg.localize.samples;
    if (!cfg.localize.packet_counts.empty()) l["packet_counts"] = cfg.localize.packet_counts;
    if (!cfg.localize.keep_samples) l["keep_samples"] = false;
    j["localize"] = l;
    j["seed"] = cfg.seed;
    j["output"] = cfg.output;
    if (cfg.integer_levels) j["integer_levels"] = true;
    return j;
}

}  // namespace lpg
