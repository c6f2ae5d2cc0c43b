#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lpg/lpg.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string profile;
    std::uint64_t seed = 0;
    std::string out;
    bool integer_levels = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "JSON experiment config file");
    sub->add_option("--profile", o.profile, "named preset (see the profiles command)");
    sub->add_option("--seed", o.seed, "override the config's RNG seed");
    sub->add_option("--out", o.out, "override the config's output directory");
    sub->add_flag("--integer-levels", o.integer_levels,
                  "restrict the company to pure offered levels");
}

lpg::ExperimentConfig resolve_config(const CLI::App* sub, const CommonOpts& o) {
    const bool has_cfg = !o.config_path.empty();
    const bool has_prof = !o.profile.empty();
    if (has_cfg == has_prof)
        throw lpg::ConfigError("give exactly one of --config or --profile");
    lpg::ExperimentConfig cfg =
        has_cfg ? lpg::load_config_file(o.config_path) : lpg::profile_config(o.profile);
    if (sub->count("--seed")) cfg.seed = o.seed;
    if (sub->count("--out")) cfg.output = o.out;
    if (sub->count("--integer-levels")) cfg.integer_levels = true;
    return cfg;
}

std::ofstream open_out_file(const std::filesystem::path& path) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw lpg::ConfigError("cannot write output file: " + path.string());
    return os;
}

int cmd_solve(const CLI::App* sub, const CommonOpts& o) {
    const auto cfg = resolve_config(sub, o);
    const auto result = lpg::solve_once(cfg);
    lpg::print_solve_report(result, cfg.game, std::cout);
    const auto path = std::filesystem::path(cfg.output) / "solve.json";
    auto os = open_out_file(path);
    os << lpg::solve_result_to_json(result, cfg.game).dump(2) << "\n";
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_sweep(const CLI::App* sub, const CommonOpts& o) {
    const auto cfg = resolve_config(sub, o);
    const auto ds = lpg::run_sweep(cfg);
    const auto path = lpg::write_sweep_outputs(ds, cfg.output);
    std::cout << "wrote " << path.string() << " (" << ds.rows.size() << " rows)\n";
    return 0;
}

int cmd_localize(const CLI::App* sub, const CommonOpts& o, bool pipe_lhat) {
    const auto cfg = resolve_config(sub, o);
    const auto result = lpg::run_localize(cfg);
    for (const auto& run : result.runs)
        std::cout << "packets=" << run.packets
                  << " mean_error=" << lpg::format_double(run.estimate.mean_error)
                  << " std_error=" << lpg::format_double(run.estimate.std_error) << "\n";
    for (const auto& path : lpg::write_localize_outputs(result, cfg.output))
        std::cout << "wrote " << path.string() << "\n";
    if (pipe_lhat) {
        if (!cfg.sweep)
            throw lpg::ConfigError("--pipe-lhat: config has no sweep section to feed");
        if (result.runs.size() != 1)
            throw lpg::ConfigError("--pipe-lhat needs exactly one packet count, got " +
                                   std::to_string(result.runs.size()));
        lpg::ExperimentConfig piped = cfg;
        piped.game.expected_loc_error = result.runs.front().estimate.mean_error;
        piped.lhat_given = true;
        piped.scene.reset();
        const auto ds = lpg::run_sweep(piped);
        const auto path = lpg::write_sweep_outputs(ds, piped.output);
        std::cout << "piped l-hat=" << lpg::format_double(piped.game.expected_loc_error)
                  << "; wrote " << path.string() << " (" << ds.rows.size() << " rows)\n";
    }
    return 0;
}

int cmd_profiles(const std::string& dump_name) {
    if (dump_name.empty()) {
        for (const auto& p : lpg::profile_list())
            std::cout << p.name << "\t" << p.summary << "\n";
        return 0;
    }
    const auto cfg = lpg::profile_config(dump_name);
    std::cout << lpg::config_to_json(cfg).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"location-privacy game solver and localization simulator"};
    app.require_subcommand(1);

    CommonOpts solve_o, sweep_o, loc_o;
    auto* solve_cmd =
        app.add_subcommand("solve", "equilibrium of the game at a single parameter point");
    add_common(solve_cmd, solve_o);
    auto* sweep_cmd =
        app.add_subcommand("sweep", "solve across a parameter sweep and write CSV");
    add_common(sweep_cmd, sweep_o);
    auto* loc_cmd =
        app.add_subcommand("localize", "Monte-Carlo localization error estimation");
    add_common(loc_cmd, loc_o);
    bool pipe_lhat = false;
    loc_cmd->add_flag("--pipe-lhat", pipe_lhat,
                      "run the config's sweep with the estimated l-hat");
    auto* prof_cmd = app.add_subcommand("profiles", "list the named presets");
    std::string dump_name;
    prof_cmd->add_option("--dump", dump_name, "print one preset as a JSON config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_cmd, solve_o);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_cmd, sweep_o);
        if (loc_cmd->parsed()) return cmd_localize(loc_cmd, loc_o, pipe_lhat);
        if (prof_cmd->parsed()) return cmd_profiles(dump_name);
    } catch (const lpg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const lpg::DegenerateGeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
