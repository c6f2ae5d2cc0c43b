#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "lpg/baselines.hpp"
#include "lpg/config.hpp"
#include "lpg/csv.hpp"
#include "lpg/localization.hpp"
#include "lpg/solver.hpp"

namespace lpg {

struct SweepCell {
    double mu = 0.0;
    double t_star = 0.0;
    double user_payoff = 0.0;
};

struct SweepRow {
    double sweep_value = 0.0;
    std::string strategy;  // "SSE" or a baseline name
    double s_hat = 0.0;
    double company_payoff = 0.0;
    std::vector<SweepCell> per_type;
};

struct SweepDataset {
    std::string sweep_var = "T";
    std::size_t n_types = 0;
    std::vector<SweepRow> rows;

    /// Fixed column schema: sweep_var, sweep_value, strategy, s_hat,
    /// company_payoff, then (mu_i, t_star_i, user_payoff_i) per type.
    std::vector<std::string> header() const {
        std::vector<std::string> h{"sweep_var", "sweep_value", "strategy", "s_hat",
                                   "company_payoff"};
        for (std::size_t i = 1; i <= n_types; ++i) {
            h.push_back("mu_" + std::to_string(i));
            h.push_back("t_star_" + std::to_string(i));
            h.push_back("user_payoff_" + std::to_string(i));
        }
        return h;
    }
};

namespace detail {

inline SweepRow make_row(double sweep_value, std::string strategy, double s_hat,
                         double payoff, const std::vector<BestResponse>& responses,
                         const GameParams& params) {
    SweepRow row;
    row.sweep_value = sweep_value;
    row.strategy = std::move(strategy);
    row.s_hat = s_hat;
    row.company_payoff = payoff;
    row.per_type.reserve(responses.size());
    for (std::size_t i = 0; i < responses.size(); ++i) {
        const double mu = threshold(params.types.entries[i].type, params).mu;
        row.per_type.push_back({mu, responses[i].t_star, responses[i].payoff});
    }
    return row;
}

}  // namespace detail

/// Solve the game over every sweep value: one SSE row plus one row per
/// configured baseline, in configuration order. Deterministic in the
/// config alone (no random draws are involved).
inline SweepDataset run_sweep(const ExperimentConfig& config) {
    config.validate();
    if (!config.sweep) throw ConfigError("run_sweep: config has no sweep section");
    if (!config.lhat_given)
        throw ConfigError(
            "run_sweep: game.expected_loc_error is required (measure it with "
            "localize --pipe-lhat)");
    const SolveOptions opt{config.integer_levels};
    SweepDataset ds;
    ds.sweep_var = config.sweep->variable;
    ds.n_types = config.game.types.size();
    for (const double value : config.sweep->values()) {
        GameParams params = config.game;
        params.visit_time = value;
        const auto sse = solve_sse(params, opt);
        ds.rows.push_back(detail::make_row(value, "SSE", sse.s_hat_star,
                                           sse.company_payoff, sse.responses, params));
        for (const auto& spec : config.baselines) {
            const auto ev = evaluate_strategy(baseline_level(spec, params, opt), params);
            ds.rows.push_back(detail::make_row(value, to_string(spec.kind), ev.s_hat,
                                               ev.company_payoff, ev.responses, params));
        }
    }
    return ds;
}

inline void write_csv(const SweepDataset& ds, std::ostream& os) {
    write_csv_row(os, ds.header());
    std::vector<std::string> cells;
    for (const auto& row : ds.rows) {
        cells.clear();
        cells.push_back(ds.sweep_var);
        cells.push_back(format_double(row.sweep_value));
        cells.push_back(row.strategy);
        cells.push_back(format_double(row.s_hat));
        cells.push_back(format_double(row.company_payoff));
        for (const auto& cell : row.per_type) {
            cells.push_back(format_double(cell.mu));
            cells.push_back(format_double(cell.t_star));
            cells.push_back(format_double(cell.user_payoff));
        }
        write_csv_row(os, cells);
    }
}

struct LocalizeRun {
    int packets = 0;
    ErrorEstimate estimate;
    std::vector<LocalizationSample> samples;  // filled when localize.keep_samples
};

struct LocalizeResult {
    std::vector<LocalizeRun> runs;  // one per packet count, in config order
};

/// Monte-Carlo l-hat estimation for every configured packet count, reusing
/// the same seed so runs differ only in noise scale (matched draws).
inline LocalizeResult run_localize(const ExperimentConfig& config) {
    config.validate();
    if (!config.scene) throw ConfigError("run_localize: config has no scene section");
    std::vector<int> counts = config.localize.packet_counts;
    if (counts.empty()) counts.push_back(config.scene->packets_per_sample);
    LocalizeResult result;
    for (const int k : counts) {
        LocalizationScene scene = *config.scene;
        scene.packets_per_sample = k;
        LocalizeRun run;
        run.packets = k;
        run.estimate = estimate_error(scene, config.localize.samples, config.seed,
                                      config.localize.keep_samples ? &run.samples : nullptr);
        result.runs.push_back(std::move(run));
    }
    return result;
}

inline void write_localize_summary(const LocalizeResult& result, std::ostream& os) {
    write_csv_row(os, std::vector<std::string>{"packets", "n_samples", "seed", "mean_error",
                                               "std_error"});
    for (const auto& run : result.runs) {
        std::vector<std::string> cells{
            std::to_string(run.packets), std::to_string(run.estimate.n_samples),
            std::to_string(run.estimate.seed), format_double(run.estimate.mean_error),
            format_double(run.estimate.std_error)};
        write_csv_row(os, cells);
    }
}

inline void write_samples_csv(const LocalizeRun& run, std::ostream& os) {
    write_csv_row(os, std::vector<std::string>{"true_x", "true_y", "est_x", "est_y", "error"});
    for (const auto& s : run.samples) {
        std::vector<std::string> cells{format_double(s.true_loc.x), format_double(s.true_loc.y),
                                       format_double(s.est_loc.x), format_double(s.est_loc.y),
                                       format_double(s.error)};
        write_csv_row(os, cells);
    }
}

/// Equilibrium of the configured game at its single (non-swept) parameter
/// point. Sweep configs must use run_sweep instead.
inline SolveResult solve_once(const ExperimentConfig& config) {
    config.validate();
    if (config.sweep)
        throw ConfigError("solve_once: config has a sweep section; use the sweep command");
    if (!config.lhat_given)
        throw ConfigError("solve_once: game.expected_loc_error is required");
    return solve_sse(config.game, SolveOptions{config.integer_levels});
}

inline void print_solve_report(const SolveResult& result, const GameParams& params,
                               std::ostream& os) {
    os << "s_hat_star = " << format_double(result.s_hat_star) << "\n";
    os << "company_payoff = " << format_double(result.company_payoff) << "\n";
    os << "strategy:\n";
    for (const auto& ls : result.strategy.support())
        os << "  level " << ls.level << "  prob " << format_double(ls.prob) << "\n";
    os << "types:\n";
    for (std::size_t i = 0; i < result.responses.size(); ++i) {
        const auto& entry = params.types.entries[i];
        std::string label = entry.type.label.empty() ? "type" + std::to_string(i + 1)
                                                     : entry.type.label;
        const auto th = threshold(entry.type, params);
        os << "  " << label << "  pi=" << format_double(entry.type.privacy_factor)
           << "  weight=" << format_double(entry.weight)
           << "  mu=" << format_double(th.mu)
           << "  t_star=" << format_double(result.responses[i].t_star)
           << (result.responses[i].tie ? " (tie)" : "")
           << "  user_payoff=" << format_double(result.user_payoffs[i]) << "\n";
    }
    os << "candidates:\n";
    for (const auto& c : result.candidates)
        os << "  s_hat=" << format_double(c.s_hat)
           << "  payoff=" << format_double(c.payoff) << "\n";
}

inline nlohmann::json solve_result_to_json(const SolveResult& result,
                                           const GameParams& params) {
    nlohmann::json j;
    j["s_hat_star"] = result.s_hat_star;
    j["company_payoff"] = result.company_payoff;
    nlohmann::json strategy = nlohmann::json::array();
    for (const auto& ls : result.strategy.support())
        strategy.push_back({{"level", ls.level}, {"prob", ls.prob}});
    j["strategy"] = strategy;
    nlohmann::json types = nlohmann::json::array();
    for (std::size_t i = 0; i < result.responses.size(); ++i) {
        const auto& entry = params.types.entries[i];
        nlohmann::json t;
        t["label"] = entry.type.label;
        t["privacy_factor"] = entry.type.privacy_factor;
        t["weight"] = entry.weight;
        t["mu"] = threshold(entry.type, params).mu;
        t["t_star"] = result.responses[i].t_star;
        t["tie"] = result.responses[i].tie;
        t["user_payoff"] = result.user_payoffs[i];
        types.push_back(t);
    }
    j["types"] = types;
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : result.candidates)
        cands.push_back({{"s_hat", c.s_hat}, {"payoff", c.payoff}});
    j["candidates"] = cands;
    return j;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write output file: " + path.string());
    return os;
}

}  // namespace detail

inline std::filesystem::path write_sweep_outputs(const SweepDataset& ds,
                                                 const std::filesystem::path& out_dir) {
    const auto path = out_dir / "sweep.csv";
    auto os = detail::open_output(path);
    write_csv(ds, os);
    return path;
}

inline std::vector<std::filesystem::path> write_localize_outputs(
    const LocalizeResult& result, const std::filesystem::path& out_dir) {
    std::vector<std::filesystem::path> written;
    const auto summary = out_dir / "localize_summary.csv";
    auto os = detail::open_output(summary);
    write_localize_summary(result, os);
    written.push_back(summary);
    for (const auto& run : result.runs) {
        if (run.samples.empty()) continue;
        const auto path = out_dir / ("localize_samples_k" + std::to_string(run.packets) + ".csv");
        auto ss = detail::open_output(path);
        write_samples_csv(run, ss);
        written.push_back(path);
    }
    return written;
}

}  // namespace lpg
